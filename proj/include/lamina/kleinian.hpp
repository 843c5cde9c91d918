#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "lamina/analysis.hpp"

namespace lamina {

using Cplx = std::complex<double>;

// 2x2 complex matrix, determinant normalized to 1 where stated
struct Mobius {
    Cplx a{1}, b{0}, c{0}, d{1};

    friend Mobius operator*(const Mobius& m, const Mobius& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
                m.c * n.b + m.d * n.d};
    }
    Cplx det() const { return a * d - b * c; }
    Cplx trace() const { return a + d; }
    Mobius inverse() const { return {d, -b, -c, a}; }  // valid for det 1
    Cplx apply(Cplx z) const { return (a * z + b) / (c * z + d); }
    void normalizeDet();
    double maxAbs() const;
};

// Representation of the orbifold group: fiber generators A, B and meridian T
// with T A T^-1 = A B and T B T^-1 = B A B; tr[A,B] = -2 cos(pi/n).
struct GroupRep {
    Mobius A, B, T;
    int n = 0;  // 0 encodes the cusped limit n = infinity
    Cplx x, y, z;  // trace coordinates (tr A, tr B, tr AB)
};

// closed-form n = infinity trace: the root of x^2 - 3x + 3 with positive
// imaginary part (continuation seed for the discrete branch)
Cplx trace_at_cusp();

// Newton continuation in the commutator-trace target from the cusp solution.
// Throws std::runtime_error on divergence.
GroupRep solve_representation(int n);

// residuals of the defining relations (up to the determinant-1 sign)
double relation_residual(const GroupRep& rep);
double commutator_residual(const GroupRep& rep);

// letters: 1 = a, -1 = a^-1, 2 = b, -2 = b^-1; words kept freely reduced
using Word = std::vector<int>;

Word free_reduce(Word w);
// forward substitution a -> ab, b -> bab
Word monodromy_substitution(const Word& w);
// w_m = phi^-m(a), via the inverse substitution a -> a a b^-1, b -> b a^-1
Word inverse_monodromy_word(int m);

// attracting fixed point of T on CP^1
Cplx attracting_fixed_point(const Mobius& T);

// points rho(t)^m rho(w_m(i)) p over all prefixes, first = p, last = A p
std::vector<Cplx> lightning_polyline(const GroupRep& rep, int m);

struct LightningDimension {
    int n = 0;
    int m = 0;
    DimensionEstimate estimate;
};

// auto-selects m per target mesh (median successive gap <= eps, m capped)
LightningDimension lightning_dimension(int n, double eps, int maxM = 14);

}  // namespace lamina
