#include "k3lat/enumerate.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>

namespace k3lat {

PairingConstraint PairingConstraint::eq(DivisorClass w, Int v) {
    PairingConstraint c; c.anchor = std::move(w); c.rel = Rel::Eq; c.value = std::move(v); return c;
}
PairingConstraint PairingConstraint::le(DivisorClass w, Int v) {
    PairingConstraint c; c.anchor = std::move(w); c.rel = Rel::Le; c.value = std::move(v); return c;
}
PairingConstraint PairingConstraint::ge(DivisorClass w, Int v) {
    PairingConstraint c; c.anchor = std::move(w); c.rel = Rel::Ge; c.value = std::move(v); return c;
}
PairingConstraint PairingConstraint::range(DivisorClass w, Int lo, Int hi) {
    PairingConstraint c; c.anchor = std::move(w); c.rel = Rel::Range;
    c.lo = std::move(lo); c.hi = std::move(hi); return c;
}

Int EnumerationResult::box_radius() const {
    Int r = 0;
    for (const auto& iv : box) {
        r = std::max(r, Int(abs(iv.lo)));
        r = std::max(r, Int(abs(iv.hi)));
    }
    return r;
}

namespace {

bool satisfies(const IntLattice& L, const ClassQuery& q, const DivisorClass& x) {
    if (x.is_zero()) return false;
    if (q.self_intersection && pair(L, x, x) != *q.self_intersection) return false;
    for (const auto& pc : q.pairings) {
        const Int v = pair(L, pc.anchor, x);
        switch (pc.rel) {
            case Rel::Eq: if (v != pc.value) return false; break;
            case Rel::Le: if (v > pc.value) return false; break;
            case Rel::Ge: if (v < pc.value) return false; break;
            case Rel::Range: if (v < pc.lo || v > pc.hi) return false; break;
        }
    }
    if (q.primitive_only && content(x) != 1) return false;
    for (const auto& e : q.exclude)
        if (x == e) return false;
    return true;
}

void finalize(std::vector<DivisorClass>& sols) {
    std::sort(sols.begin(), sols.end());
    sols.erase(std::unique(sols.begin(), sols.end()), sols.end());
}

// Column reduction of the row vector w by unimodular operations:
// returns U (n x n, det +-1) with w * U = (g, 0, ..., 0), g = gcd(w) > 0.
std::vector<Int> column_reduce(const std::vector<Int>& w, int n) {
    const size_t N = static_cast<size_t>(n);
    std::vector<Int> U(N * N, Int(0));
    for (size_t i = 0; i < N; ++i) U[i * N + i] = 1;
    std::vector<Int> v = w;

    auto colop = [&](size_t a, size_t b, const Int& p, const Int& q, const Int& r, const Int& s) {
        // (col_a, col_b) <- (p*col_a + q*col_b, r*col_a + s*col_b), ps - qr = +-1
        for (size_t i = 0; i < N; ++i) {
            Int ca = U[i * N + a], cb = U[i * N + b];
            U[i * N + a] = p * ca + q * cb;
            U[i * N + b] = r * ca + s * cb;
        }
        Int va = v[a], vb = v[b];
        v[a] = p * va + q * vb;
        v[b] = r * va + s * vb;
    };

    for (size_t i = 1; i < N; ++i) {
        if (v[i] == 0) continue;
        if (v[0] == 0) {
            colop(0, i, Int(0), Int(1), Int(-1), Int(0));
            continue;
        }
        // extended gcd of (v[0], v[i])
        Int a = v[0], b = v[i];
        Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
        while (b != 0) {
            Int qt = a / b;  // truncated division keeps the identity exact
            Int t = a - qt * b; a = b; b = t;
            t = x0 - qt * x1; x0 = x1; x1 = t;
            t = y0 - qt * y1; y0 = y1; y1 = t;
        }
        // a = gcd, x0*v0 + y0*vi = a; the complementary row kills v[i]
        colop(0, i, x0, y0, -(v[i] / a), v[0] / a);
    }
    if (v[0] < 0) {
        for (size_t i = 0; i < N; ++i) U[i * N + 0] = -U[i * N + 0];
        v[0] = -v[0];
    }
    return U;
}

struct Ellipsoid {
    // (z - center)^T P (z - center) <= rho over z in Z^m, P positive definite
    int m = 0;
    std::vector<Rat> P;       // m x m
    std::vector<Rat> center;  // rational center
    Rat rho;
};

// exact LDL^T-style recursion; collects all integer points of the ellipsoid
void enumerate_ellipsoid(const Ellipsoid& E, std::vector<std::vector<Int>>& out,
                         std::uint64_t& nodes) {
    const int m = E.m;
    if (E.rho < 0) return;
    const size_t M = static_cast<size_t>(m);

    // decompose P = U^T diag(d) U with U unit upper triangular
    std::vector<Rat> A = E.P;
    std::vector<Rat> d(M);
    std::vector<Rat> u(M * M, Rat(0));
    for (size_t k = 0; k < M; ++k) {
        d[k] = A[k * M + k];
        if (d[k] <= 0) throw std::logic_error("enumerate: complement form is not negative definite");
        for (size_t j = k + 1; j < M; ++j) u[k * M + j] = A[k * M + j] / d[k];
        for (size_t i = k + 1; i < M; ++i)
            for (size_t j = k + 1; j < M; ++j)
                A[i * M + j] -= A[k * M + i] * A[k * M + j] / d[k];
    }

    std::vector<Int> z(M);
    // recursion from the last coordinate down
    auto rec = [&](auto&& self, int level, const Rat& budget) -> void {
        ++nodes;
        const size_t k = static_cast<size_t>(level);
        // w_k = (z_k - center_k) + sum_{j>k} u_kj (z_j - center_j)
        Rat shift = 0;
        for (size_t j = k + 1; j < M; ++j) shift += u[k * M + j] * (Rat(z[j]) - E.center[j]);
        const Rat c = E.center[k] - shift;  // z_k ranges around c
        const Rat q = budget / d[k];
        Int zlo = ceil_center_minus_sqrt(c, q);
        Int zhi = floor_center_plus_sqrt(c, q);
        for (Int zk = zlo; zk <= zhi; ++zk) {
            z[k] = zk;
            Rat w = Rat(zk) - c;
            Rat rem = budget - d[k] * w * w;
            if (rem < 0) continue;  // guards rounding at the interval ends
            if (level == 0) out.push_back(z);
            else self(self, level - 1, rem);
        }
    };
    if (m == 0) { out.push_back({}); return; }
    rec(rec, m - 1, E.rho);
}

// rational inverse by Gauss-Jordan (small m)
std::vector<Rat> invert(std::vector<Rat> a, int m) {
    const size_t M = static_cast<size_t>(m);
    std::vector<Rat> inv(M * M, Rat(0));
    for (size_t i = 0; i < M; ++i) inv[i * M + i] = 1;
    for (size_t k = 0; k < M; ++k) {
        size_t p = k;
        while (p < M && a[p * M + k] == 0) ++p;
        if (p == M) throw std::logic_error("invert: singular matrix");
        if (p != k)
            for (size_t j = 0; j < M; ++j) {
                std::swap(a[k * M + j], a[p * M + j]);
                std::swap(inv[k * M + j], inv[p * M + j]);
            }
        const Rat piv = a[k * M + k];
        for (size_t j = 0; j < M; ++j) { a[k * M + j] /= piv; inv[k * M + j] /= piv; }
        for (size_t i = 0; i < M; ++i) {
            if (i == k || a[i * M + k] == 0) continue;
            const Rat f = a[i * M + k];
            for (size_t j = 0; j < M; ++j) {
                a[i * M + j] -= f * a[k * M + j];
                inv[i * M + j] -= f * inv[k * M + j];
            }
        }
    }
    return inv;
}

struct AnchorSlice {
    std::vector<DivisorClass> solutions;
    std::vector<CoordInterval> box;
    bool any = false;
};

// all x with x.W = c and x^2 = a, plus the derived per-coordinate box
AnchorSlice enumerate_slice(const IntLattice& L, const DivisorClass& W, const Int& c,
                            const Int& a, const ClassQuery& q, std::uint64_t& nodes) {
    AnchorSlice out;
    const int n = L.rank();
    const size_t N = static_cast<size_t>(n);

    std::vector<Int> w(N, Int(0));  // w_i = (G W)_i, so x.W = w^T x
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j)
            w[i] += L.gram(static_cast<int>(i), static_cast<int>(j)) * W.coords[j];

    Int g = 0;
    for (const auto& v : w) g = gcd(g, v);
    if (g == 0) return out;  // W = 0 cannot anchor (caller prevents this)
    if (c % g != 0) return out;

    const std::vector<Int> U = column_reduce(w, n);
    // particular solution s = (c/g) * U_col0;  kernel basis = U cols 1..n-1
    std::vector<Int> s(N);
    for (size_t i = 0; i < N; ++i) s[i] = (c / g) * U[i * N + 0];
    const int m = n - 1;
    const size_t M = static_cast<size_t>(m);

    auto gmul = [&](const std::vector<Int>& x) {
        std::vector<Int> r(N, Int(0));
        for (size_t i = 0; i < N; ++i)
            for (size_t j = 0; j < N; ++j) r[i] += L.gram(static_cast<int>(i), static_cast<int>(j)) * x[j];
        return r;
    };

    if (m == 0) {
        DivisorClass x{std::vector<Int>(s)};
        if (pair(L, x, x) == a && satisfies(L, q, x)) out.solutions.push_back(x);
        out.box.resize(N);
        for (size_t i = 0; i < N; ++i) out.box[i] = {s[i], s[i]};
        out.any = true;
        return out;
    }

    // quadratic in z: f(z) = (s + Bz)^2 = z^T Pn z + 2 u^T z + e,  Pn = B^T G B
    std::vector<std::vector<Int>> B(M, std::vector<Int>(N));
    for (size_t t = 0; t < M; ++t)
        for (size_t i = 0; i < N; ++i) B[t][i] = U[i * N + (t + 1)];

    const std::vector<Int> Gs = gmul(s);
    std::vector<Int> Pn(M * M);
    std::vector<Int> uvec(M);
    Int e = 0;
    for (size_t i = 0; i < N; ++i) e += s[i] * Gs[i];
    for (size_t t = 0; t < M; ++t) {
        const std::vector<Int> GB = gmul(B[t]);
        Int dot = 0;
        for (size_t i = 0; i < N; ++i) dot += s[i] * GB[i];
        uvec[t] = dot;
        for (size_t r = 0; r < M; ++r) {
            Int val = 0;
            for (size_t i = 0; i < N; ++i) val += B[r][i] * GB[i];
            Pn[r * M + t] = val;
        }
    }

    // negate: P positive definite, equation (z - z*)^T P (z - z*) = rho
    Ellipsoid E;
    E.m = m;
    E.P.resize(M * M);
    for (size_t i = 0; i < M * M; ++i) E.P[i] = Rat(-Pn[i]);
    const std::vector<Rat> Pinv = invert(E.P, m);
    E.center.resize(M);
    for (size_t i = 0; i < M; ++i) {
        Rat v = 0;
        for (size_t j = 0; j < M; ++j) v += Pinv[i * M + j] * Rat(uvec[j]);
        E.center[i] = v;
    }
    Rat uz = 0;
    for (size_t i = 0; i < M; ++i) uz += Rat(uvec[i]) * E.center[i];
    E.rho = uz + Rat(e) - Rat(a);

    // derived completeness box in x-coordinates, valid for the whole ellipsoid
    out.box.resize(N);
    out.any = true;
    if (E.rho < 0) {
        for (size_t i = 0; i < N; ++i) out.box[i] = {Int(0), Int(0)};
        return out;
    }
    for (size_t i = 0; i < N; ++i) {
        Rat gamma = Rat(s[i]);
        for (size_t t = 0; t < M; ++t) gamma += Rat(B[t][i]) * E.center[t];
        Rat quad = 0;  // B_i P^{-1} B_i^T
        for (size_t r = 0; r < M; ++r)
            for (size_t t = 0; t < M; ++t) quad += Rat(B[r][i]) * Pinv[r * M + t] * Rat(B[t][i]);
        out.box[i] = {ceil_center_minus_sqrt(gamma, E.rho * quad),
                      floor_center_plus_sqrt(gamma, E.rho * quad)};
    }

    std::vector<std::vector<Int>> zs;
    enumerate_ellipsoid(E, zs, nodes);
    for (const auto& z : zs) {
        DivisorClass x{std::vector<Int>(s)};
        for (size_t t = 0; t < M; ++t)
            for (size_t i = 0; i < N; ++i) x.coords[i] += B[t][i] * z[t];
        if (pair(L, x, x) != a) continue;  // interior ellipsoid points
        if (satisfies(L, q, x)) out.solutions.push_back(x);
    }
    return out;
}

void merge_box(std::vector<CoordInterval>& acc, const std::vector<CoordInterval>& b) {
    if (acc.empty()) { acc = b; return; }
    for (size_t i = 0; i < acc.size(); ++i) {
        acc[i].lo = std::min(acc[i].lo, b[i].lo);
        acc[i].hi = std::max(acc[i].hi, b[i].hi);
    }
}

} // namespace

EnumerationResult enumerate_classes(const IntLattice& L, const ClassQuery& q) {
    const auto t0 = std::chrono::steady_clock::now();
    EnumerationResult res;
    if (!q.self_intersection)
        throw finiteness_not_certified("enumerate_classes: x^2 is not fixed by the query");
    for (const auto& pc : q.pairings)
        if (pc.anchor.rank() != static_cast<size_t>(L.rank()))
            throw std::invalid_argument("enumerate_classes: anchor rank mismatch");

    // pick an anchor constraint that certifies finiteness
    const PairingConstraint* anchor = nullptr;
    for (const auto& pc : q.pairings) {
        if (pc.rel != Rel::Eq && pc.rel != Rel::Range) continue;
        if (pair(L, pc.anchor, pc.anchor) <= 0) continue;
        if (pc.rel == Rel::Range && pc.lo > pc.hi) continue;
        anchor = &pc;
        if (pc.rel == Rel::Eq) break;  // prefer a single slice
    }
    if (!anchor)
        throw finiteness_not_certified(
            "enumerate_classes: no Eq/Range pairing constraint with positive anchor (W^2 > 0)");

    const Int lo = anchor->rel == Rel::Eq ? anchor->value : anchor->lo;
    const Int hi = anchor->rel == Rel::Eq ? anchor->value : anchor->hi;
    for (Int c = lo; c <= hi; ++c) {
        AnchorSlice slice =
            enumerate_slice(L, anchor->anchor, c, *q.self_intersection, q, res.stats.nodes);
        if (!slice.any) continue;
        res.solutions.insert(res.solutions.end(), slice.solutions.begin(), slice.solutions.end());
        merge_box(res.box, slice.box);
    }
    if (res.box.empty()) res.box.assign(static_cast<size_t>(L.rank()), CoordInterval{Int(0), Int(0)});
    finalize(res.solutions);
    res.bound_note = "projection against " + L.class_name(anchor->anchor) +
                     " bounds the search to " + box_description(res.box, L.labels());
    res.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

namespace {

template <typename I>
void oracle_scan(const IntLattice& L, const ClassQuery& q, long long box,
                 std::vector<DivisorClass>& sols, std::uint64_t& nodes) {
    const int n = L.rank();
    const size_t N = static_cast<size_t>(n);
    std::vector<I> g(N * N);
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j)
            g[i * N + j] = static_cast<I>(L.gram(static_cast<int>(i), static_cast<int>(j)));
    std::vector<std::vector<I>> anchors;
    for (const auto& pc : q.pairings) {
        std::vector<I> w(N, I(0));
        for (size_t i = 0; i < N; ++i)
            for (size_t j = 0; j < N; ++j) w[i] += g[i * N + j] * static_cast<I>(pc.anchor.coords[j]);
        anchors.push_back(std::move(w));
    }
    std::vector<long long> x(N, -box);
    while (true) {
        ++nodes;
        bool zero = std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; });
        if (!zero) {
            I self = 0;
            for (size_t i = 0; i < N; ++i) {
                I row = 0;
                for (size_t j = 0; j < N; ++j) row += g[i * N + j] * I(x[j]);
                self += I(x[i]) * row;
            }
            bool ok = !q.self_intersection || self == I(*q.self_intersection);
            for (size_t t = 0; ok && t < anchors.size(); ++t) {
                I v = 0;
                for (size_t i = 0; i < N; ++i) v += anchors[t][i] * I(x[i]);
                const auto& pc = q.pairings[t];
                switch (pc.rel) {
                    case Rel::Eq: ok = v == I(pc.value); break;
                    case Rel::Le: ok = v <= I(pc.value); break;
                    case Rel::Ge: ok = v >= I(pc.value); break;
                    case Rel::Range: ok = v >= I(pc.lo) && v <= I(pc.hi); break;
                }
            }
            if (ok) {
                DivisorClass dc{std::vector<Int>(N)};
                for (size_t i = 0; i < N; ++i) dc.coords[i] = x[i];
                if (!q.primitive_only || content(dc) == 1) {
                    bool excl = false;
                    for (const auto& e : q.exclude) excl = excl || dc == e;
                    if (!excl) sols.push_back(std::move(dc));
                }
            }
        }
        size_t i = 0;
        while (i < N && x[i] == box) { x[i] = -box; ++i; }
        if (i == N) break;
        ++x[i];
    }
}

} // namespace

EnumerationResult oracle_enumerate(const IntLattice& L, const ClassQuery& q, const Int& box) {
    if (box < 1) throw std::invalid_argument("oracle_enumerate: box must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    EnumerationResult res;
    const int n = L.rank();

    Int gmax = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gmax = std::max(gmax, Int(abs(L.gram(i, j))));
    for (const auto& pc : q.pairings)
        for (const auto& v : pc.anchor.coords) gmax = std::max(gmax, Int(abs(v)));
    // worst-case |x^T G y| with the box; decides whether int64 is safe
    const Int worst = Int(n) * Int(n) * gmax * gmax * box * box;
    if (worst < (Int(1) << 62) && box < std::numeric_limits<long long>::max())
        oracle_scan<long long>(L, q, static_cast<long long>(box), res.solutions, res.stats.nodes);
    else
        oracle_scan<Int>(L, q, static_cast<long long>(box), res.solutions, res.stats.nodes);

    finalize(res.solutions);
    res.box.assign(static_cast<size_t>(n), CoordInterval{-box, box});
    res.bound_note = "exhaustive scan of the given box";
    res.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

Rat nef_violation_bound_sq(const IntLattice& L, const DivisorClass& ample,
                           const DivisorClass& delta) {
    const Int P = pair(L, ample, ample);
    const Int t = pair(L, delta, ample);
    const Int d2 = pair(L, delta, delta);
    if (d2 <= 0 || t <= 0)
        throw anchor_not_positive("nef bound requires delta^2 > 0 and delta.ample > 0");
    return Rat(2 * (t * t - d2 * P), P);
}

EnumerationResult roots_violating_nef(const IntLattice& L, const DivisorClass& ample,
                                      const DivisorClass& delta) {
    const auto t0 = std::chrono::steady_clock::now();
    const Rat bound = nef_violation_bound_sq(L, ample, delta);

    EnumerationResult res;
    res.box.assign(static_cast<size_t>(L.rank()), CoordInterval{Int(0), Int(0)});
    // v = C.delta runs over negative values with v^2 < bound
    for (Int v = -1; Rat(v * v) < bound; --v) {
        ClassQuery q;
        q.self_intersection = Int(-2);
        q.pairings.push_back(PairingConstraint::eq(delta, v));
        q.pairings.push_back(PairingConstraint::ge(ample, Int(1)));
        EnumerationResult slice = enumerate_classes(L, q);
        res.solutions.insert(res.solutions.end(), slice.solutions.begin(), slice.solutions.end());
        res.stats.nodes += slice.stats.nodes;
        for (size_t i = 0; i < res.box.size(); ++i) {
            res.box[i].lo = std::min(res.box[i].lo, slice.box[i].lo);
            res.box[i].hi = std::max(res.box[i].hi, slice.box[i].hi);
        }
    }
    finalize(res.solutions);
    {
        std::ostringstream os;
        os << "effective roots C with C." << L.class_name(delta)
           << " < 0 satisfy (C." << L.class_name(delta) << ")^2 < " << rat_num(bound).str();
        if (rat_den(bound) != 1) os << "/" << rat_den(bound).str();
        res.bound_note = os.str();
    }
    res.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::string query_description(const IntLattice& L, const ClassQuery& q) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    auto sep = [&] { if (!first) os << ", "; first = false; };
    if (q.self_intersection) { sep(); os << "x^2=" << q.self_intersection->str(); }
    for (const auto& pc : q.pairings) {
        sep();
        os << "x." << L.class_name(pc.anchor);
        switch (pc.rel) {
            case Rel::Eq: os << "=" << pc.value.str(); break;
            case Rel::Le: os << "<=" << pc.value.str(); break;
            case Rel::Ge: os << ">=" << pc.value.str(); break;
            case Rel::Range: os << " in [" << pc.lo.str() << "," << pc.hi.str() << "]"; break;
        }
    }
    if (q.primitive_only) { sep(); os << "gcd(x)=1"; }
    for (const auto& e : q.exclude) { sep(); os << "x!=" << L.class_name(e); }
    os << "}";
    return os.str();
}

std::string box_description(const std::vector<CoordInterval>& box,
                            const std::vector<std::string>& labels) {
    std::ostringstream os;
    for (size_t i = 0; i < box.size(); ++i) {
        if (i) os << ", ";
        os << (i < labels.size() ? labels[i] : "c" + std::to_string(i)) << " in ["
           << box[i].lo.str() << "," << box[i].hi.str() << "]";
    }
    return os.str();
}

} // namespace k3lat
