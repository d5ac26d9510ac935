#include "piltz/dd.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace piltz {

dd sqrt(const dd& a) {
    if (a.hi <= 0.0) {
        if (a.hi == 0.0) return {0.0, 0.0};
        return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    }
    double x = std::sqrt(a.hi);
    dd r = a - eft::two_prod(x, x);
    return eft::quick_two_sum(x, r.hi / (2.0 * x));
}

dd exp(const dd& a) {
    constexpr double kMaxArg = 709.0;
    if (a.hi > kMaxArg) return {std::numeric_limits<double>::infinity(), 0.0};
    if (a.hi < -745.0) return {0.0, 0.0};
    if (a.hi == 0.0 && a.lo == 0.0) return {1.0, 0.0};

    // a = m ln2 + r, then exp(r) via Taylor on r / 2^10 and repeated squaring.
    const double m = std::floor(a.hi / ddconst::ln2.hi + 0.5);
    dd r = a - ddconst::ln2 * m;
    r = ldexp(r, -10);

    dd p = sqr(r);
    dd term = ldexp(p, -1);
    dd s = r + term;
    for (int i = 3; i <= 11; ++i) {
        term = term * r / static_cast<double>(i);
        s += term;
        if (std::fabs(term.hi) < 1e-36 * std::fabs(s.hi)) break;
    }
    // exp(2r) - 1 = (exp(r) - 1) * (exp(r) + 1) = s * (s + 2)
    for (int i = 0; i < 10; ++i) s = s * (s + 2.0);
    s = s + 1.0;
    return ldexp(s, static_cast<int>(m));
}

dd log(const dd& a) {
    if (a.hi <= 0.0) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    if (a.hi == 1.0 && a.lo == 0.0) return {0.0, 0.0};
    // One Newton step on exp(y) = a from the double-precision logarithm.
    dd y = std::log(a.hi);
    y = y + a * exp(-y) - 1.0;
    return y;
}

dd pow(const dd& base, const dd& exponent) { return exp(exponent * log(base)); }

dd powi(const dd& base, int n) {
    if (n == 0) return 1.0;
    bool invert = n < 0;
    unsigned e = invert ? static_cast<unsigned>(-n) : static_cast<unsigned>(n);
    dd result = 1.0;
    dd b = base;
    while (e != 0) {
        if (e & 1U) result *= b;
        e >>= 1U;
        if (e != 0) b = sqr(b);
    }
    return invert ? dd(1.0) / result : result;
}

dd nroot(const dd& a, int k) {
    if (k == 1) return a;
    if (a.hi == 0.0) return 0.0;
    if (k == 2) return sqrt(a);
    double y0 = std::pow(a.hi, 1.0 / k);
    // Newton from a double-accurate start: y = y0 + (a - y0^k) / (k y0^(k-1)).
    dd yk1 = powi(dd(y0), k - 1);
    dd yk = yk1 * y0;
    return dd(y0) + (a - yk) / (yk1 * static_cast<double>(k));
}

namespace {

dd pow10(int e) {
    dd ten = 10.0;
    if (e >= 0) return powi(ten, e);
    return dd(1.0) / powi(ten, -e);
}

}  // namespace

std::string to_string(const dd& value, int digits) {
    if (std::isnan(value.hi)) return "nan";
    if (std::isinf(value.hi)) return value.hi > 0 ? "inf" : "-inf";
    if (value.hi == 0.0) return "0";
    digits = std::clamp(digits, 1, 32);

    std::string out;
    dd a = value;
    if (a.hi < 0) {
        out.push_back('-');
        a = -a;
    }
    int e = static_cast<int>(std::floor(std::log10(a.hi)));
    dd r = a / pow10(e);
    if (r.hi >= 10.0) {
        r = r / 10.0;
        ++e;
    } else if (r.hi < 1.0) {
        r = r * 10.0;
        --e;
    }

    // One guard digit, then round half up with carry propagation.
    std::string mant;
    for (int i = 0; i <= digits; ++i) {
        int d = static_cast<int>(std::floor(r.hi));
        if (d < 0) d = 0;
        if (d > 9) d = 9;
        mant.push_back(static_cast<char>('0' + d));
        r = (r - static_cast<double>(d)) * 10.0;
    }
    bool round_up = mant.back() >= '5';
    mant.pop_back();
    if (round_up) {
        int i = static_cast<int>(mant.size()) - 1;
        while (i >= 0 && mant[static_cast<std::size_t>(i)] == '9') {
            mant[static_cast<std::size_t>(i)] = '0';
            --i;
        }
        if (i < 0) {
            mant.insert(mant.begin(), '1');
            mant.pop_back();
            ++e;
        } else {
            ++mant[static_cast<std::size_t>(i)];
        }
    }

    if (e >= -12 && e < 24) {
        std::string fixed;
        if (e < 0) {
            fixed = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + mant;
        } else if (static_cast<std::size_t>(e + 1) >= mant.size()) {
            fixed = mant + std::string(static_cast<std::size_t>(e + 1) - mant.size(), '0');
        } else {
            fixed = mant.substr(0, static_cast<std::size_t>(e + 1)) + "." +
                    mant.substr(static_cast<std::size_t>(e + 1));
        }
        if (fixed.find('.') != std::string::npos) {
            while (fixed.back() == '0') fixed.pop_back();
            if (fixed.back() == '.') fixed.pop_back();
        }
        return out + fixed;
    }
    std::string sci = mant.substr(0, 1);
    std::string rest = mant.substr(1);
    while (!rest.empty() && rest.back() == '0') rest.pop_back();
    if (!rest.empty()) sci += "." + rest;
    return out + sci + "e" + std::to_string(e);
}

dd dd_from_string(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    dd mant = 0.0;
    int scale = 0;
    int significant = 0;
    bool seen_digit = false;
    bool after_point = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (after_point) throw std::invalid_argument("malformed decimal");
            after_point = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) break;
        seen_digit = true;
        int d = c - '0';
        if (significant < 33) {
            if (d != 0 || significant > 0) ++significant;
            mant = mant * 10.0 + static_cast<double>(d);
            if (after_point) --scale;
        } else if (!after_point) {
            ++scale;
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed decimal");
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        int exp_sign = 1;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            exp_sign = text[i] == '-' ? -1 : 1;
            ++i;
        }
        int ev = 0;
        bool exp_digit = false;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            ev = ev * 10 + (text[i] - '0');
            exp_digit = true;
        }
        if (!exp_digit) throw std::invalid_argument("malformed exponent");
        scale += exp_sign * ev;
    }
    if (i != text.size()) throw std::invalid_argument("trailing characters in decimal");
    dd v = scale >= 0 ? mant * pow10(scale) : mant / pow10(-scale);
    return negative ? -v : v;
}

}  // namespace piltz
