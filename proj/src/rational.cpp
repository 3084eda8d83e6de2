#include "easyqg/rational.hpp"

#include "easyqg/errors.hpp"

#include <cctype>

namespace easyqg {

namespace {

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

bool is_natural_literal(std::string_view s) {
    return !s.empty() && s.front() != '-' && is_integer_literal(s);
}

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                            : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_natural_literal(den))
        throw ParseError("malformed rational '" + std::string(text) + "'");
    Integer d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q(Integer(std::string(num), 10), d);
    q.canonicalize();
    return q;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        out.push_back(parse_rational(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

Rational ratio(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Integer ipow(long n, unsigned e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(n < 0 ? -n : n), e);
    if (n < 0 && (e % 2 == 1)) r = -r;
    return r;
}

}  // namespace easyqg
