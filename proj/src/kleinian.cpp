#include "lamina/kleinian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace lamina {

void Mobius::normalizeDet() {
    Cplx s = std::sqrt(det());
    a /= s; b /= s; c /= s; d /= s;
}

double Mobius::maxAbs() const {
    return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
}

Cplx trace_at_cusp() {
    // x^2 - 3x + 3 = 0, branch with positive imaginary part
    return Cplx(1.5, std::sqrt(3.0) / 2.0);
}

namespace {

// trace polynomial after clearing denominators: with z = x, y = x/(x-1) and
// tr[A,B] = x^2+y^2+z^2-xyz-2 = kappa, x satisfies
//   P(x) = x^4 - 3x^3 + (3-c) x^2 + 2c x - c = 0,  c = kappa + 2
Cplx trace_poly(Cplx x, double c) {
    return ((x - 3.0) * x + (3.0 - c)) * x * x + 2.0 * c * x - c;
}
Cplx trace_poly_d(Cplx x, double c) {
    return ((4.0 * x - 9.0) * x + 2.0 * (3.0 - c)) * x + 2.0 * c;
}

Cplx newton_continue(double cTarget) {
    Cplx x = trace_at_cusp();
    const int steps = 64;
    for (int s = 1; s <= steps; ++s) {
        double c = cTarget * double(s) / steps;
        for (int it = 0; it < 80; ++it) {
            Cplx p = trace_poly(x, c);
            Cplx dp = trace_poly_d(x, c);
            Cplx dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        if (!(std::abs(trace_poly(x, c)) < 1e-9))
            throw std::runtime_error("NewtonDivergence in trace continuation");
    }
    return x;
}

// null vector of the stacked intertwiner system via Gaussian elimination: the
// 8x4 complex matrix (rows: T A - (AB) T = 0 and T B - (BAB) T = 0 on vec T)
std::array<Cplx, 4> intertwiner_null(const Mobius& A, const Mobius& AB, const Mobius& B,
                                     const Mobius& BAB) {
    // vec(T) column-major: t = (T00, T10, T01, T11)
    // vec(T M) = (M^T (x) I) t ; vec(N T) = (I (x) N) t
    auto rows = [](const Mobius& M, const Mobius& N, Cplx R[4][4]) {
        // M^T (x) I
        Cplx K[4][4] = {{M.a, 0, M.c, 0}, {0, M.a, 0, M.c}, {M.b, 0, M.d, 0}, {0, M.b, 0, M.d}};
        // I (x) N
        Cplx L[4][4] = {{N.a, N.b, 0, 0}, {N.c, N.d, 0, 0}, {0, 0, N.a, N.b}, {0, 0, N.c, N.d}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) R[i][j] = K[i][j] - L[i][j];
    };
    Cplx Msys[8][4];
    Cplx R1[4][4], R2[4][4];
    rows(A, AB, R1);
    rows(B, BAB, R2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Msys[i][j] = R1[i][j];
            Msys[i + 4][j] = R2[i][j];
        }
    // row echelon with partial pivoting
    int pivotCols[3];
    int rank = 0;
    int rowUsed[8] = {0};
    for (int col = 0; col < 4 && rank < 3; ++col) {
        int best = -1;
        double bestAbs = 1e-12;
        for (int r = 0; r < 8; ++r) {
            if (rowUsed[r]) continue;
            if (std::abs(Msys[r][col]) > bestAbs) {
                bestAbs = std::abs(Msys[r][col]);
                best = r;
            }
        }
        if (best < 0) continue;
        rowUsed[best] = rank + 1;
        pivotCols[rank] = col;
        for (int r = 0; r < 8; ++r) {
            if (r == best || std::abs(Msys[r][col]) == 0.0) continue;
            Cplx f = Msys[r][col] / Msys[best][col];
            for (int j = col; j < 4; ++j) Msys[r][j] -= f * Msys[best][j];
        }
        // move pivot row into position by remembering it
        for (int j = 0; j < 4; ++j) std::swap(Msys[rank][j], Msys[best][j]);
        std::swap(rowUsed[rank], rowUsed[best]);
        ++rank;
    }
    if (rank != 3) throw std::runtime_error("intertwiner: unexpected rank " + std::to_string(rank));
    // free column = the one not among pivots
    bool isPivot[4] = {false, false, false, false};
    for (int k = 0; k < rank; ++k) isPivot[pivotCols[k]] = true;
    int freeCol = 0;
    while (isPivot[freeCol]) ++freeCol;
    std::array<Cplx, 4> t{0, 0, 0, 0};
    t[freeCol] = 1;
    for (int k = rank - 1; k >= 0; --k) {
        int pc = pivotCols[k];
        Cplx s = 0;
        for (int j = pc + 1; j < 4; ++j) s += Msys[k][j] * t[j];
        t[pc] = -s / Msys[k][pc];
    }
    return t;
}

}  // namespace

GroupRep solve_representation(int n) {
    if (n != 0 && n < 2) throw std::invalid_argument("solve_representation: n >= 2 or 0 (=inf)");
    double kappa = n == 0 ? -2.0 : -2.0 * std::cos(M_PI / double(n));
    double c = kappa + 2.0;

    GroupRep rep;
    rep.n = n;
    rep.x = newton_continue(c);
    rep.z = rep.x;
    rep.y = rep.x / (rep.x - 1.0);

    rep.A = {rep.x, 1, -1, 0};
    // B = [[0, zeta], [-1/zeta, y]] with zeta^2 + z zeta + 1 = 0
    Cplx zeta = (-rep.z + std::sqrt(rep.z * rep.z - 4.0)) / 2.0;
    if (std::abs(zeta) < 1.0) zeta = 1.0 / zeta;  // fix the branch deterministically
    rep.B = {0, zeta, -1.0 / zeta, rep.y};

    Mobius AB = rep.A * rep.B;
    Mobius BAB = rep.B * rep.A * rep.B;
    auto t = intertwiner_null(rep.A, AB, rep.B, BAB);
    rep.T = {t[0], t[2], t[1], t[3]};  // column-major vec back to the matrix
    rep.T.normalizeDet();
    return rep;
}

double relation_residual(const GroupRep& rep) {
    Mobius Ti = rep.T.inverse();
    Mobius lhs1 = rep.T * rep.A * Ti;
    Mobius lhs2 = rep.T * rep.B * Ti;
    Mobius r1 = rep.A * rep.B;
    Mobius r2 = rep.B * rep.A * rep.B;
    auto diff = [](const Mobius& u, const Mobius& v) {
        double plus = std::max(std::max(std::abs(u.a - v.a), std::abs(u.b - v.b)),
                               std::max(std::abs(u.c - v.c), std::abs(u.d - v.d)));
        double minus = std::max(std::max(std::abs(u.a + v.a), std::abs(u.b + v.b)),
                                std::max(std::abs(u.c + v.c), std::abs(u.d + v.d)));
        return std::min(plus, minus);
    };
    return std::max(diff(lhs1, r1), diff(lhs2, r2));
}

double commutator_residual(const GroupRep& rep) {
    Mobius comm = rep.A * rep.B * rep.A.inverse() * rep.B.inverse();
    double kappa = rep.n == 0 ? -2.0 : -2.0 * std::cos(M_PI / double(rep.n));
    return std::abs(comm.trace() - Cplx(kappa, 0));
}

Word free_reduce(Word w) {
    Word out;
    for (int l : w) {
        if (!out.empty() && out.back() == -l) out.pop_back();
        else out.push_back(l);
    }
    return out;
}

namespace {

Word substitute(const Word& w, const Word& aImg, const Word& bImg) {
    Word out;
    auto push = [&](int l) {
        if (!out.empty() && out.back() == -l) out.pop_back();
        else out.push_back(l);
    };
    auto pushWord = [&](const Word& img, bool inverse) {
        if (!inverse) {
            for (int l : img) push(l);
        } else {
            for (auto it = img.rbegin(); it != img.rend(); ++it) push(-*it);
        }
    };
    for (int l : w) {
        switch (l) {
            case 1: pushWord(aImg, false); break;
            case -1: pushWord(aImg, true); break;
            case 2: pushWord(bImg, false); break;
            case -2: pushWord(bImg, true); break;
            default: throw std::invalid_argument("bad letter");
        }
    }
    return out;
}

}  // namespace

Word monodromy_substitution(const Word& w) {
    return substitute(w, Word{1, 2}, Word{2, 1, 2});
}

Word inverse_monodromy_word(int m) {
    Word w{1};
    for (int k = 0; k < m; ++k) w = substitute(w, Word{1, 1, -2}, Word{2, -1});
    return w;
}

Cplx attracting_fixed_point(const Mobius& T) {
    // eigenvector of the eigenvalue with larger modulus
    Cplx tr = T.trace();
    Cplx disc = std::sqrt(tr * tr - 4.0 * T.det());
    Cplx l1 = (tr + disc) / 2.0;
    Cplx l2 = (tr - disc) / 2.0;
    Cplx lam = std::abs(l1) >= std::abs(l2) ? l1 : l2;
    // (A - lam I) v = 0
    if (std::abs(T.c) > 1e-14) return (lam - T.d) / T.c;
    if (std::abs(T.b) > 1e-14) return T.b / (lam - T.a);
    return std::abs(T.a) >= std::abs(T.d) ? Cplx(1e30, 0) : Cplx(0, 0);
}

std::vector<Cplx> lightning_polyline(const GroupRep& rep, int m) {
    Cplx p = attracting_fixed_point(rep.T);
    Word wm = inverse_monodromy_word(m);
    Mobius P;  // T^m, projectively normalized along the way
    for (int k = 0; k < m; ++k) {
        P = P * rep.T;
        double s = P.maxAbs();
        P.a /= s; P.b /= s; P.c /= s; P.d /= s;
    }
    Mobius Ai = rep.A.inverse();
    Mobius Bi = rep.B.inverse();
    std::vector<Cplx> pts;
    pts.reserve(wm.size() + 1);
    pts.push_back(P.apply(p));
    for (int l : wm) {
        const Mobius& g = l == 1 ? rep.A : (l == -1 ? Ai : (l == 2 ? rep.B : Bi));
        P = P * g;
        double s = P.maxAbs();
        P.a /= s; P.b /= s; P.c /= s; P.d /= s;
        pts.push_back(P.apply(p));
    }
    return pts;
}

LightningDimension lightning_dimension(int n, double eps, int maxM) {
    GroupRep rep = solve_representation(n);
    int m = 4;
    std::vector<Cplx> pts;
    for (;; ++m) {
        pts = lightning_polyline(rep, m);
        std::vector<double> gaps;
        gaps.reserve(pts.size() - 1);
        for (size_t i = 0; i + 1 < pts.size(); ++i) gaps.push_back(std::abs(pts[i + 1] - pts[i]));
        std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
        double median = gaps[gaps.size() / 2];
        if (median <= eps || m >= maxM) break;
    }
    Polyline2D poly;
    poly.points.reserve(pts.size());
    for (const Cplx& z : pts) poly.points.push_back({z.real(), z.imag()});

    // scale window: the local mesh varies wildly near the cusps, so clip the
    // lower end at twice the 90th-percentile gap rather than the min edge
    std::vector<double> gaps;
    for (size_t i = 0; i + 1 < poly.points.size(); ++i)
        gaps.push_back(std::hypot(poly.points[i + 1].x - poly.points[i].x,
                                  poly.points[i + 1].y - poly.points[i].y));
    std::sort(gaps.begin(), gaps.end());
    double p90 = gaps[size_t(0.9 * double(gaps.size() - 1))];
    double lo = 2.0 * p90;
    double hi = polyline_diameter(poly) / 4.0;

    LightningDimension out;
    out.n = n;
    out.m = m;
    out.estimate = estimate_dimension_length_regression(poly, geometric_scales(lo, hi));
    return out;
}

}  // namespace lamina
