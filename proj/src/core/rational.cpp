#include "rational.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace glyphmcda {
namespace {

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
        throw std::invalid_argument("not a decimal number: \"" + std::string(whole) + "\"");
    }
    return out;
}

bool is_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num_text = text.substr(0, slash);
        auto den_text = text.substr(slash + 1);
        bool neg = !num_text.empty() && num_text.front() == '-';
        if (!is_digits(neg ? num_text.substr(1) : num_text) || !is_digits(den_text)) {
            throw std::invalid_argument("not a fraction: \"" + std::string(text) + "\"");
        }
        std::int64_t den = parse_int(den_text, text);
        if (den == 0) throw std::invalid_argument("zero denominator: \"" + std::string(text) + "\"");
        return Rational(parse_int(num_text, text), den);
    }

    bool negative = false;
    std::string_view body = text;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto dot = body.find('.');
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (dot != std::string_view::npos && frac_part.empty()) {
        throw std::invalid_argument("not a decimal number: \"" + std::string(text) + "\"");
    }
    if ((!int_part.empty() && !is_digits(int_part)) || (!frac_part.empty() && !is_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
        throw std::invalid_argument("not a decimal number: \"" + std::string(text) + "\"");
    }
    if (frac_part.size() > 12) {
        throw std::invalid_argument("too many decimals: \"" + std::string(text) + "\"");
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
    std::int64_t frac = frac_part.empty() ? 0 : parse_int(frac_part, text);
    Rational value(whole * scale + frac, scale);
    return negative ? -value : value;
}

std::string to_canonical_string(const Rational& value) {
    std::int64_t den = value.denominator();
    int twos = 0;
    int fives = 0;
    while (den % 2 == 0) { den /= 2; ++twos; }
    while (den % 5 == 0) { den /= 5; ++fives; }
    if (den != 1) {
        return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
    }
    int decimals = std::max(twos, fives);
    if (decimals == 0) return std::to_string(value.numerator());
    return to_fixed(value, decimals);
}

std::int64_t round_half_up(const Rational& value) {
    // floor((2p + q) / 2q)
    return floor_div(2 * value.numerator() + value.denominator(), 2 * value.denominator());
}

std::string to_fixed(const Rational& value, int decimals) {
    std::int64_t scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    std::int64_t scaled = round_half_up(value * scale);
    bool negative = scaled < 0;
    std::uint64_t magnitude = negative ? static_cast<std::uint64_t>(-scaled) : static_cast<std::uint64_t>(scaled);
    std::string digits = std::to_string(magnitude);
    if (decimals > 0) {
        if (digits.size() <= static_cast<std::size_t>(decimals)) {
            digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
    }
    return negative ? "-" + digits : digits;
}

std::string to_short_string(const Rational& value) {
    std::string canonical = to_canonical_string(value);
    if (canonical.find('/') != std::string::npos) return to_fixed(value, 2);
    return canonical;
}

}  // namespace glyphmcda
