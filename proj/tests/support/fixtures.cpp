#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace orbiclan::testing {

std::string corpus_dir() { return ORBICLAN_CORPUS_DIR; }

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

surface::TriangulationData load_fixture(const std::string& name)
{
    return surface::parse_triangulation(read_file(corpus_dir() + "/" + name + ".json"));
}

const std::vector<std::string>& corpus_names()
{
    static const std::vector<std::string> names{"pentagon_fan", "typeI", "typeII", "typeIII", "disk_orbifold"};
    return names;
}

surface::TriangulationData single_pending_arc()
{
    surface::TriangulationData t;
    t.arcs.push_back({"j", true});
    return t;
}

complex::CWComplex single_pending_complex()
{
    complex::CWComplex c;
    c.vertices = {"j"};
    c.pending = {true};
    return c;
}

} // namespace orbiclan::testing
