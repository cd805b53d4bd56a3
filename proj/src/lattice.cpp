#include "cuspsym/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cuspsym/errors.hpp"

namespace cuspsym {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw InvalidInput("ragged matrix literal");
        for (auto x : r)
            data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t r = 0; r < rows_; ++r)
        std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const BigInt& k)
{
    for (std::size_t c = 0; c < cols_; ++c)
        (*this)(i, c) += k * (*this)(j, c);
}

void IntMatrix::add_col_multiple(std::size_t i, std::size_t j, const BigInt& k)
{
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, i) += k * (*this)(r, j);
}

void IntMatrix::negate_row(std::size_t i)
{
    for (std::size_t c = 0; c < cols_; ++c)
        (*this)(i, c) = -(*this)(i, c);
}

IntMatrix IntMatrix::permuted(const std::vector<std::size_t>& row_order,
                              const std::vector<std::size_t>& col_order) const
{
    IntMatrix out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out(r, c) = (*this)(row_order[r], col_order[c]);
    return out;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y)
{
    if (x.cols_ != y.rows_)
        throw InvalidInput("matrix dimension mismatch in product");
    IntMatrix out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
        for (std::size_t k = 0; k < x.cols_; ++k) {
            if (x(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < y.cols_; ++j)
                out(i, j) += x(i, k) * y(k, j);
        }
    return out;
}

std::string to_string(const IntMatrix& m)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r)
            os << ',';
        os << '[';
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c)
                os << ',';
            os << m(r, c);
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

BigInt determinant(const IntMatrix& m)
{
    if (m.rows() != m.cols())
        throw InvalidInput("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    // Bareiss elimination.
    IntMatrix a = m;
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::vector<BigInt> SmithForm::diagonal() const
{
    std::vector<BigInt> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
        d.push_back(S(i, i));
    return d;
}

namespace {

void verify_smith(const IntMatrix& m, const SmithForm& f)
{
    if (f.U * m * f.V != f.S)
        throw std::logic_error("Smith normal form does not reconstruct: S != U*M*V");
    const BigInt du = determinant(f.U), dv = determinant(f.V);
    if (abs(du) != 1 || abs(dv) != 1)
        throw std::logic_error("Smith normal form transform is not unimodular");
    for (std::size_t i = 0; i < f.S.rows(); ++i)
        for (std::size_t j = 0; j < f.S.cols(); ++j)
            if (i != j && f.S(i, j) != 0)
                throw std::logic_error("Smith normal form is not diagonal");
    const auto d = f.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] < 0)
            throw std::logic_error("negative Smith diagonal entry");
        if (i + 1 < d.size()) {
            if (d[i] == 0 && d[i + 1] != 0)
                throw std::logic_error("zero before nonzero on the Smith diagonal");
            if (d[i] != 0 && d[i + 1] % d[i] != 0)
                throw std::logic_error("Smith diagonal breaks the divisibility chain");
        }
    }
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m)
{
    SmithForm f{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
    IntMatrix& S = f.S;
    const std::size_t r = m.rows(), c = m.cols();
    std::size_t t = 0;
    for (; t < std::min(r, c); ++t) {
        for (;;) {
            // Smallest nonzero entry of the active block.
            std::size_t pi = r, pj = c;
            BigInt best = 0;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    const BigInt& x = S(i, j);
                    if (x != 0 && (best == 0 || abs(x) < best)) {
                        best = abs(x);
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == r)
                break;
            S.swap_rows(t, pi);
            f.U.swap_rows(t, pi);
            S.swap_cols(t, pj);
            f.V.swap_cols(t, pj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (S(i, t) == 0)
                    continue;
                const BigInt q = S(i, t) / S(t, t);
                S.add_row_multiple(i, t, -q);
                f.U.add_row_multiple(i, t, -q);
                dirty = dirty || S(i, t) != 0;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (S(t, j) == 0)
                    continue;
                const BigInt q = S(t, j) / S(t, t);
                S.add_col_multiple(j, t, -q);
                f.V.add_col_multiple(j, t, -q);
                dirty = dirty || S(t, j) != 0;
            }
            if (dirty)
                continue;

            // Pivot must divide the rest of the active block.
            std::size_t bad_row = r;
            for (std::size_t i = t + 1; i < r && bad_row == r; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (S(i, j) % S(t, t) != 0) {
                        bad_row = i;
                        break;
                    }
            if (bad_row != r) {
                S.add_row_multiple(t, bad_row, 1);
                f.U.add_row_multiple(t, bad_row, 1);
                continue;
            }
            if (S(t, t) < 0) {
                S.negate_row(t);
                f.U.negate_row(t);
            }
            break;
        }
        if (S(t, t) == 0)
            break;
    }
    f.rank = 0;
    for (const auto& d : f.diagonal())
        if (d != 0)
            ++f.rank;
    verify_smith(m, f);
    return f;
}

BigInt FinAbGroup::torsion_order() const
{
    BigInt p = 1;
    for (const auto& d : invariant_factors)
        p *= d;
    return p;
}

std::string to_string(const FinAbGroup& g)
{
    if (g.trivial())
        return "0";
    std::vector<std::string> parts;
    if (g.free_rank == 1)
        parts.push_back("Z");
    else if (g.free_rank > 1)
        parts.push_back("Z^" + std::to_string(g.free_rank));
    for (const auto& d : g.invariant_factors)
        parts.push_back("Z/" + d.str());
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            s += " x ";
        s += parts[i];
    }
    return s;
}

FinAbGroup cokernel(const IntMatrix& m)
{
    FinAbGroup g;
    if (m.cols() == 0) {
        g.free_rank = m.rows();
        return g;
    }
    const SmithForm f = smith_normal_form(m);
    g.free_rank = m.rows() - f.rank;
    for (const auto& d : f.diagonal())
        if (d > 1)
            g.invariant_factors.push_back(d);
    return g;
}

IntMatrix fork_intersection_matrix(const QuotientGraph& g)
{
    const std::size_t k = g.chain.size();
    if (k < 2)
        throw InvalidInput("quotient graph chain needs at least two vertices");
    const std::size_t total = g.vertex_count();
    IntMatrix q(total, 4);
    for (std::size_t j = 0; j < 4; ++j) {
        const std::size_t fork = k + j;
        const std::size_t end = j < 2 ? 0 : k - 1;
        q(fork, j) = -2;
        q(end, j) = 1;
    }
    return q;
}

FinAbGroup class_group_of_quotient(const QuotientGraph& g)
{
    return cokernel(fork_intersection_matrix(g));
}

Pi1Result pi1_complement(const std::vector<LatticeVec>& rays)
{
    Pi1Result out;
    if (rays.empty()) {
        out.no_rays = true;
        out.group.free_rank = 2;
        return out;
    }
    IntMatrix m(2, rays.size());
    for (std::size_t j = 0; j < rays.size(); ++j) {
        const auto& v = rays[j];
        if (std::gcd(v.x, v.y) != 1)
            throw InvalidInput("ray " + to_string(v) + " is not primitive");
        m(0, j) = v.x;
        m(1, j) = v.y;
    }
    out.group = cokernel(m);
    return out;
}

std::vector<LatticeVec> parse_rays(const std::string& text)
{
    std::vector<LatticeVec> rays;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.find_first_not_of(" \t") == std::string::npos)
            continue;
        const CycleWord pair = parse_cycle(item);
        if (pair.size() != 2)
            throw InvalidInput("ray \"" + item + "\" must have two coordinates");
        rays.push_back({pair[0], pair[1]});
    }
    return rays;
}

namespace {

bool lower_half(const LatticeVec& v)
{
    return v.y < 0 || (v.y == 0 && v.x < 0);
}

std::int64_t cross(const LatticeVec& a, const LatticeVec& b)
{
    return a.x * b.y - a.y * b.x;
}

}  // namespace

std::optional<std::vector<LatticeVec>> fan_from_cycle(const CycleWord& d)
{
    const std::size_t n = d.size();
    if (n < 3)
        return std::nullopt;
    std::vector<LatticeVec> v{{1, 0}, {0, 1}};
    try {
        for (std::size_t i = 1; i <= n; ++i)
            v.push_back(d[i % n] * v[i] - v[i - 1]);
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
    if (v[n] != v[0] || v[n + 1] != v[1])
        return std::nullopt;
    std::size_t turns = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (cross(v[i], v[i + 1]) != 1)
            return std::nullopt;
        if (lower_half(v[i]) && !lower_half(v[i + 1]))
            ++turns;
    }
    if (turns != 1)
        return std::nullopt;
    v.resize(n);
    return v;
}

std::vector<LatticeVec> order_counterclockwise(std::vector<LatticeVec> rays)
{
    std::sort(rays.begin(), rays.end(), [](const LatticeVec& a, const LatticeVec& b) {
        const bool la = lower_half(a), lb = lower_half(b);
        if (la != lb)
            return !la;
        return cross(a, b) > 0;
    });
    return rays;
}

std::vector<LatticeVec> fan_normal_form(const std::vector<LatticeVec>& rays)
{
    const std::size_t n = rays.size();
    if (n < 2)
        throw InvalidInput("a fan needs at least two rays");
    std::vector<LatticeVec> best;
    for (std::size_t start = 0; start < n; ++start) {
        for (int dir : {1, -1}) {
            auto at = [&](std::size_t k) {
                const auto idx = (static_cast<std::int64_t>(start) + dir * static_cast<std::int64_t>(k)) %
                                 static_cast<std::int64_t>(n);
                return rays[static_cast<std::size_t>((idx + static_cast<std::int64_t>(n)) %
                                                     static_cast<std::int64_t>(n))];
            };
            const LatticeVec p = at(0), q = at(1);
            // Columns p, q; invert to send p -> e1, q -> e2.
            const Mat2Z basis{p.x, q.x, p.y, q.y};
            const auto det = basis.det();
            if (det != 1 && det != -1)
                throw InvalidInput("consecutive rays " + to_string(p) + ", " + to_string(q) +
                                   " do not form a lattice basis");
            const Mat2Z inv = basis.inverse();
            std::vector<LatticeVec> img(n);
            for (std::size_t k = 0; k < n; ++k)
                img[k] = inv * at(k);
            if (best.empty() || img < best)
                best = std::move(img);
        }
    }
    return best;
}

bool fans_equivalent(const std::vector<LatticeVec>& a, const std::vector<LatticeVec>& b)
{
    return a.size() == b.size() && fan_normal_form(a) == fan_normal_form(b);
}

}  // namespace cuspsym
