#pragma once
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "gha/error.hpp"

namespace gha {

/* Exact scalar arithmetic. Two field types share one interface:
   arbitrary-precision rationals (always in lowest terms, positive
   denominator -- mpq_class keeps results canonical) and prime fields
   of 64-bit residues. Field objects are cheap values carried by every
   matrix; PrimeField holds its modulus at runtime. */

struct Rationals {
    using Elem = mpq_class;

    static Elem zero() { return Elem(0); }
    static Elem one() { return Elem(1); }
    static Elem from_long(long v) { return Elem(v); }
    static Elem ratio(long num, long den) {
        require(den != 0, "ratio: zero denominator");
        Elem r(num, den);
        r.canonicalize();
        return r;
    }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem div(const Elem& a, const Elem& b) {
        require(b != 0, "div: zero divisor");
        return a / b;
    }
    static Elem neg(const Elem& a) { return -a; }
    static Elem inv(const Elem& a) {
        require(a != 0, "inv: zero element");
        return 1 / a;
    }
    static bool is_zero(const Elem& a) { return a == 0; }
    static bool eq(const Elem& a, const Elem& b) { return a == b; }
    static std::string to_string(const Elem& a) { return a.get_str(); }
    // numerator as long, denominator must be 1 (test/report helper)
    static long to_long_num(const Elem& a) {
        require(a.get_den() == 1, "to_long_num: not an integer");
        return (long)a.get_num().get_si();
    }
    bool operator==(const Rationals&) const = default;
};

struct PrimeField {
    uint64_t p;
    using Elem = uint64_t;

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    Elem ratio(long num, long den) const {
        require(den != 0, "ratio: zero denominator");
        Elem d = from_long(den);
        require(d != 0, "ratio: denominator divisible by the field characteristic");
        return mul(from_long(num), inv(d));
    }
    Elem from_long(long v) const {
        long r = v % (long)p;
        if (r < 0) r += (long)p;
        return (Elem)r;
    }
    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= p ? s - p : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
    Elem mul(Elem a, Elem b) const { return (Elem)((unsigned __int128)a * b % p); }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem inv(Elem a) const {
        require(a != 0, "inv: zero element");
        // p prime: a^(p-2)
        Elem r = 1, base = a;
        uint64_t e = p - 2;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    std::string to_string(Elem a) const { return std::to_string(a); }
    long to_long_num(Elem a) const { return (long)a; }
    bool operator==(const PrimeField&) const = default;
};

/* Runtime field selection for the cli layer. */
struct FieldSpec {
    bool rationals = true;
    uint64_t p = 0;

    static FieldSpec rational() { return {true, 0}; }
    static FieldSpec prime(uint64_t p) {
        require(p >= 2 && p < (1ull << 32), "prime field modulus out of range");
        for (uint64_t d = 2; d * d <= p; ++d) require(p % d != 0, "modulus not prime");
        return {false, p};
    }
    bool operator==(const FieldSpec&) const = default;
};

} // namespace gha
