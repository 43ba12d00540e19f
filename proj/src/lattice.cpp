#include "k3lat/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace k3lat {

bool DivisorClass::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Int& v) { return v == 0; });
}

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
    if (coords.size() != o.coords.size()) throw std::invalid_argument("class rank mismatch");
    DivisorClass r(*this);
    for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
    return r;
}

DivisorClass DivisorClass::operator-(const DivisorClass& o) const {
    if (coords.size() != o.coords.size()) throw std::invalid_argument("class rank mismatch");
    DivisorClass r(*this);
    for (size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
    return r;
}

DivisorClass DivisorClass::operator-() const {
    DivisorClass r(*this);
    for (auto& v : r.coords) v = -v;
    return r;
}

DivisorClass operator*(const Int& s, const DivisorClass& x) {
    DivisorClass r(x);
    for (auto& v : r.coords) v *= s;
    return r;
}

Int content(const DivisorClass& x) {
    Int g = 0;
    for (const auto& v : x.coords) g = gcd(g, v);
    return g;
}

IntLattice IntLattice::create(std::vector<std::string> labels,
                              std::vector<std::vector<Int>> gram_rows) {
    IntLattice L;
    const size_t n = gram_rows.size();
    if (n == 0) throw std::invalid_argument("lattice: empty Gram matrix");
    if (labels.size() != n) throw std::invalid_argument("lattice: labels/rank mismatch");
    L.rank_ = static_cast<int>(n);
    L.labels_ = std::move(labels);
    L.gram_.resize(n * n);
    for (size_t i = 0; i < n; ++i) {
        if (gram_rows[i].size() != n) throw std::invalid_argument("lattice: Gram matrix not square");
        for (size_t j = 0; j < n; ++j) L.gram_[i * n + j] = gram_rows[i][j];
    }
    for (size_t i = 0; i < n; ++i) {
        if (L.gram_[i * n + i] % 2 != 0)
            throw std::invalid_argument("lattice: odd diagonal entry (lattice must be even)");
        for (size_t j = i + 1; j < n; ++j)
            if (L.gram_[i * n + j] != L.gram_[j * n + i])
                throw std::invalid_argument("lattice: Gram matrix not symmetric");
    }
    if (matrix_determinant(L.gram_, L.rank_) == 0)
        throw std::invalid_argument("lattice: degenerate Gram matrix");
    return L;
}

std::optional<DivisorClass> IntLattice::basis_class(const std::string& label) const {
    for (int i = 0; i < rank_; ++i) {
        if (labels_[static_cast<size_t>(i)] == label) {
            DivisorClass x(std::vector<Int>(static_cast<size_t>(rank_), Int(0)));
            x.coords[static_cast<size_t>(i)] = 1;
            return x;
        }
    }
    return std::nullopt;
}

std::string IntLattice::class_name(const DivisorClass& x) const {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < rank_; ++i) {
        const Int& c = x.coords[static_cast<size_t>(i)];
        if (c == 0) continue;
        if (c > 0 && !first) os << "+";
        if (c == -1) os << "-";
        else if (c != 1) os << c.str();
        os << labels_[static_cast<size_t>(i)];
        first = false;
    }
    return os.str();
}

Int pair(const IntLattice& L, const DivisorClass& a, const DivisorClass& b) {
    const size_t n = static_cast<size_t>(L.rank());
    if (a.coords.size() != n || b.coords.size() != n)
        throw std::invalid_argument("pair: class rank mismatch");
    Int s = 0;
    for (size_t i = 0; i < n; ++i) {
        if (a.coords[i] == 0) continue;
        Int row = 0;
        for (size_t j = 0; j < n; ++j) row += L.gram(static_cast<int>(i), static_cast<int>(j)) * b.coords[j];
        s += a.coords[i] * row;
    }
    return s;
}

// Bareiss fraction-free elimination with row pivoting; exact over Int.
Int matrix_determinant(std::vector<Int> m, int n) {
    if (n == 0) return 1;
    const size_t N = static_cast<size_t>(n);
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < N; ++k) {
        if (m[k * N + k] == 0) {
            size_t r = k + 1;
            while (r < N && m[r * N + k] == 0) ++r;
            if (r == N) return 0;
            for (size_t j = 0; j < N; ++j) std::swap(m[k * N + j], m[r * N + j]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < N; ++i)
            for (size_t j = k + 1; j < N; ++j)
                m[i * N + j] = (m[i * N + j] * m[k * N + k] - m[i * N + k] * m[k * N + j]) / prev;
        prev = m[k * N + k];
    }
    return sign * m[N * N - 1];
}

Int discriminant(const IntLattice& L) {
    std::vector<Int> m(static_cast<size_t>(L.rank()) * L.rank());
    for (int i = 0; i < L.rank(); ++i)
        for (int j = 0; j < L.rank(); ++j) m[static_cast<size_t>(i) * L.rank() + j] = L.gram(i, j);
    return matrix_determinant(std::move(m), L.rank());
}

namespace {

// symmetric diagonalization over the rationals (congruence transformations),
// used when a leading principal minor vanishes
std::pair<int, int> signature_by_diagonalization(const IntLattice& L) {
    const int n = L.rank();
    const size_t N = static_cast<size_t>(n);
    std::vector<Rat> a(N * N);
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) a[i * N + j] = Rat(L.gram(static_cast<int>(i), static_cast<int>(j)));

    int pos = 0, neg = 0;
    for (size_t k = 0; k < N; ++k) {
        if (a[k * N + k] == 0) {
            size_t p = k;
            while (p < N && a[p * N + p] == 0) ++p;
            if (p < N) {
                // symmetric swap of basis vectors k and p
                for (size_t j = 0; j < N; ++j) std::swap(a[k * N + j], a[p * N + j]);
                for (size_t i = 0; i < N; ++i) std::swap(a[i * N + k], a[i * N + p]);
            } else {
                // all remaining diagonal entries vanish; e_k += e_j with a_kj != 0
                size_t q = k + 1;
                while (q < N && a[k * N + q] == 0) ++q;
                if (q == N) throw std::invalid_argument("signature: degenerate Gram matrix");
                for (size_t j = 0; j < N; ++j) a[k * N + j] += a[q * N + j];
                for (size_t i = 0; i < N; ++i) a[i * N + k] += a[i * N + q];
            }
        }
        const Rat piv = a[k * N + k];
        (piv > 0 ? pos : neg)++;
        for (size_t i = k + 1; i < N; ++i) {
            if (a[i * N + k] == 0) continue;
            const Rat f = a[i * N + k] / piv;
            for (size_t j = k; j < N; ++j) a[i * N + j] -= f * a[k * N + j];
            for (size_t j = 0; j < N; ++j) a[j * N + i] = a[i * N + j];
        }
    }
    return {pos, neg};
}

} // namespace

std::pair<int, int> signature(const IntLattice& L) {
    const int n = L.rank();
    std::vector<Int> minors(static_cast<size_t>(n));
    bool all_nonzero = true;
    for (int t = 1; t <= n; ++t) {
        std::vector<Int> m(static_cast<size_t>(t) * t);
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < t; ++j) m[static_cast<size_t>(i) * t + j] = L.gram(i, j);
        minors[static_cast<size_t>(t - 1)] = matrix_determinant(std::move(m), t);
        if (minors[static_cast<size_t>(t - 1)] == 0) { all_nonzero = false; break; }
    }
    if (!all_nonzero) return signature_by_diagonalization(L);

    // Jacobi: the number of sign changes in 1, m1, ..., mn counts negatives
    int changes = 0;
    int prev = 1;
    for (int t = 0; t < n; ++t) {
        int s = minors[static_cast<size_t>(t)] > 0 ? 1 : -1;
        if (s != prev) ++changes;
        prev = s;
    }
    return {n - changes, changes};
}

Int sublattice_discriminant(const IntLattice& L, const std::vector<DivisorClass>& vs) {
    if (vs.empty()) throw std::invalid_argument("sublattice_discriminant: empty tuple");
    const int t = static_cast<int>(vs.size());
    std::vector<Int> m(static_cast<size_t>(t) * t);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j)
            m[static_cast<size_t>(i) * t + j] = pair(L, vs[static_cast<size_t>(i)], vs[static_cast<size_t>(j)]);
    return matrix_determinant(std::move(m), t);
}

Divisibility divisibility_obstruction(const IntLattice& L,
                                      const std::vector<std::vector<Int>>& prescribed_gram) {
    const size_t n = static_cast<size_t>(L.rank());
    if (prescribed_gram.size() != n) throw std::invalid_argument("divisibility_obstruction: size mismatch");
    std::vector<Int> m(n * n);
    for (size_t i = 0; i < n; ++i) {
        if (prescribed_gram[i].size() != n)
            throw std::invalid_argument("divisibility_obstruction: size mismatch");
        for (size_t j = 0; j < n; ++j) m[i * n + j] = prescribed_gram[i][j];
    }
    const Int sub = matrix_determinant(std::move(m), static_cast<int>(n));
    const Int disc = discriminant(L);
    // A degenerate prescribed tuple is never a full-rank sublattice, so the
    // index argument says nothing about it.
    if (sub == 0) return Divisibility::NotRuledOut;
    if (sub % disc != 0) return Divisibility::RuledOut;
    if (sub / disc <= 0) return Divisibility::RuledOut;
    return Divisibility::NotRuledOut;
}

bool in_family_range(const LatticeFamilyParams& p) {
    const Int &j = p.j, &k = p.k, &h = p.h;
    if (p.shape == FamilyShape::Rank2) {
        if ((j == 1 || j == 2) && k >= j + 4 && h == 2) return true;
        if (j == -1 && (k == 1 || k == 2) && h >= 5 - 2 * k) return true;
        if (j == 1 && k == 5 && h == 3) return true;
        return false;
    }
    if (j == 0 && (k == 1 || k == 2) && h >= 5 - 2 * k) return true;
    if (j == 1 && k == 4 && h == 1) return true;
    return false;
}

IntLattice family_lattice(const LatticeFamilyParams& p, bool explore) {
    if (!explore && !in_family_range(p))
        throw std::invalid_argument("family_lattice: parameters outside the supported ranges (" +
                                    family_name(p) + "); pass explore to override");
    const Int &j = p.j, &k = p.k, &h = p.h;
    if (p.shape == FamilyShape::Rank2)
        return IntLattice::create({"D", "L"}, {{2 * h, k}, {k, 2 * j}});
    return IntLattice::create({"D", "L", "R"},
                              {{2 * h, k, 2}, {k, 4 * j - 2, j}, {2, j, -2}});
}

std::string family_name(const LatticeFamilyParams& p) {
    std::ostringstream os;
    os << "Gamma(j=" << p.j.str() << ",k=" << p.k.str() << ",h=" << p.h.str()
       << (p.shape == FamilyShape::Rank2 ? ",rank2)" : ",rank3)");
    return os.str();
}

} // namespace k3lat
