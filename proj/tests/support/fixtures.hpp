#pragma once

#include "orbiclan/complex.hpp"
#include "orbiclan/surface.hpp"

#include <string>
#include <vector>

namespace orbiclan::testing {

std::string corpus_dir();

/// Reads data/corpus/<name>.json.
surface::TriangulationData load_fixture(const std::string& name);

/// The five bundled fixtures, in a fixed order.
const std::vector<std::string>& corpus_names();

/// One vertex carrying a special loop and nothing else.
/// The local rules reject it (the arc bounds no triangle), so its complex
/// is assembled by hand.
surface::TriangulationData single_pending_arc();
complex::CWComplex single_pending_complex();

std::string read_file(const std::string& path);

} // namespace orbiclan::testing
