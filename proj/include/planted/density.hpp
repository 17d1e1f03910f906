#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "planted/graph.hpp"

namespace planted {

// Exact rational with int64 components; comparisons go through 128-bit
// intermediates so density ties are decided exactly.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
};

// d(H) = max over non-empty subgraphs F of e(F)/v(F), with a witness of
// minimal vertex count among the maximizers.
struct DensityWitness {
    Rational value;
    std::vector<int> witness;  // vertices of H, ascending
};

// Exact maximum density via iterated min-cut (Dinkelbach on the Goldberg
// network); the witness is recovered from residual reachability with each
// vertex forced in turn. Guarded at v(H) <= 200.
DensityWitness max_density(const Graph& h);

// Subset-enumeration reference, v(H) <= 20.
DensityWitness max_density_exhaustive(const Graph& h);

}  // namespace planted
