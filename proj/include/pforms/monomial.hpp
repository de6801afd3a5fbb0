#ifndef PFORMS_MONOMIAL_HPP
#define PFORMS_MONOMIAL_HPP

#include <array>
#include <cstdint>
#include <stdexcept>

#include "pforms/context.hpp"

namespace pforms {

// Exponent vector, zero-padded to the maximum arity so comparisons need no
// context.  Exponents stay well below 2^16 at desk scale; arithmetic checks
// anyway because Frobenius powers scale exponents hard.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};

    int deg() const {
        int d = 0;
        for (auto x : e) d += x;
        return d;
    }

    bool is_one() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }

    static Monomial one() { return Monomial{}; }

    static Monomial var(int i, int exp = 1) {
        Monomial m;
        m.e.at(i) = static_cast<std::uint16_t>(exp);
        return m;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) {
            int v = e[i] + o.e[i];
            if (v > 0xffff) throw std::overflow_error("monomial exponent overflow");
            r.e[i] = static_cast<std::uint16_t>(v);
        }
        return r;
    }

    bool divides(const Monomial& o) const {
        for (int i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }

    // this / o, assuming o.divides(*this)
    Monomial operator/(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
        return r;
    }

    static Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = a.e[i] < b.e[i] ? a.e[i] : b.e[i];
        return r;
    }

    Monomial pow(int k) const {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) {
            long long v = static_cast<long long>(e[i]) * k;
            if (v > 0xffff) throw std::overflow_error("monomial exponent overflow");
            r.e[i] = static_cast<std::uint16_t>(v);
        }
        return r;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
};

// Graded lexicographic order: total degree first, then leftmost exponent.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.deg(), db = b.deg();
        if (da != db) return da < db;
        for (int i = 0; i < kMaxVars; ++i)
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
        return false;
    }
};

} // namespace pforms

#endif
