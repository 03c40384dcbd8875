#include "orbiclan/rational.hpp"

#include "orbiclan/errors.hpp"

#include <cctype>

namespace orbiclan {

std::string to_string(const Rational& r)
{
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

namespace {

bool is_integer_literal(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size())
        return false;
    for (std::size_t k = start; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            return false;
    return true;
}

Integer parse_integer(std::string_view s)
{
    if (s[0] == '+')
        s.remove_prefix(1);
    return Integer(std::string(s));
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_literal(text))
            throw ParseError("not a rational: \"" + std::string(text) + "\"");
        return Rational(parse_integer(text));
    }
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-')
        throw ParseError("not a rational: \"" + std::string(text) + "\"");
    Integer d = parse_integer(den);
    if (d == 0)
        throw ParseError("zero denominator: \"" + std::string(text) + "\"");
    return Rational(parse_integer(num), d);
}

} // namespace orbiclan
