#include "solilab/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace solilab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// Split "a+b*i" style text at the sign that starts the imaginary part.
std::size_t imaginary_split(std::string_view s) {
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') return k;
    }
    return std::string_view::npos;
}

} // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
        throw ParseError("not an exact rational: '" + std::string(text) + "'");
    mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num));
    mpz_class d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    mpq_class q(n, d);
    return Rational(q);
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

std::string Gaussian::str() const {
    if (im_.is_zero()) return re_.str();
    std::string imag;
    if (im_ == Rational(1)) imag = "i";
    else if (im_ == Rational(-1)) imag = "-i";
    else imag = im_.str() + "*i";
    if (re_.is_zero()) return imag;
    return re_.str() + (im_.sign() > 0 ? "+" : "") + imag;
}

Gaussian Gaussian::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw ParseError("empty Gaussian rational");
    if (s.back() != 'i') return Gaussian(Rational::parse(s));
    s.remove_suffix(1);
    if (!s.empty() && s.back() == '*') s.remove_suffix(1);
    std::size_t split = imaginary_split(s);
    std::string_view re_part = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
    std::string_view im_part = split == std::string_view::npos ? s : s.substr(split);
    Rational im;
    if (im_part.empty() || im_part == "+") im = Rational(1);
    else if (im_part == "-") im = Rational(-1);
    else im = Rational::parse(im_part);
    Rational re = re_part.empty() ? Rational(0) : Rational::parse(re_part);
    return {re, im};
}

std::string format_complex(const Complex& z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17g*i", z.real(), z.imag());
    return buf;
}

Complex parse_complex(std::string_view text) {
    std::string_view s = trim(text);
    auto to_double = [&](std::string_view part) {
        std::string owned(part);
        char* end = nullptr;
        double v = std::strtod(owned.c_str(), &end);
        if (owned.empty() || end != owned.c_str() + owned.size())
            throw ParseError("not a number: '" + std::string(text) + "'");
        return v;
    };
    if (s.empty()) throw ParseError("empty complex number");
    if (s.back() != 'i') {
        if (s.find('/') != std::string_view::npos) return Complex(Rational::parse(s).to_double(), 0.0);
        return {to_double(s), 0.0};
    }
    s.remove_suffix(1);
    if (!s.empty() && s.back() == '*') s.remove_suffix(1);
    std::size_t split = imaginary_split(s);
    std::string_view re_part = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
    std::string_view im_part = split == std::string_view::npos ? s : s.substr(split);
    double im = im_part.empty() || im_part == "+" ? 1.0 : im_part == "-" ? -1.0 : to_double(im_part);
    double re = re_part.empty() ? 0.0 : to_double(re_part);
    return {re, im};
}

} // namespace solilab
