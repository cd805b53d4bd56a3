#include "cuspsym/hyperbolic.hpp"

#include <stdexcept>

#include "cuspsym/errors.hpp"

namespace cuspsym {

namespace {

std::int64_t mul(std::int64_t x, std::int64_t y)
{
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r))
        throw std::overflow_error("64-bit overflow in matrix arithmetic");
    return r;
}

std::int64_t add(std::int64_t x, std::int64_t y)
{
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r))
        throw std::overflow_error("64-bit overflow in matrix arithmetic");
    return r;
}

std::int64_t sub(std::int64_t x, std::int64_t y)
{
    std::int64_t r;
    if (__builtin_sub_overflow(x, y, &r))
        throw std::overflow_error("64-bit overflow in matrix arithmetic");
    return r;
}

int mod2(std::int64_t x)
{
    return static_cast<int>(((x % 2) + 2) % 2);
}

}  // namespace

std::int64_t Mat2Z::det() const
{
    return sub(mul(a, d), mul(b, c));
}

std::int64_t Mat2Z::trace() const
{
    return add(a, d);
}

Mat2Z Mat2Z::inverse() const
{
    const auto D = det();
    if (D == 1)
        return {d, -b, -c, a};
    if (D == -1)
        return {-d, b, c, -a};
    throw InvalidInput("matrix " + to_string(*this) + " is not invertible over Z");
}

Mat2Z operator*(const Mat2Z& x, const Mat2Z& y)
{
    return {add(mul(x.a, y.a), mul(x.b, y.c)), add(mul(x.a, y.b), mul(x.b, y.d)),
            add(mul(x.c, y.a), mul(x.d, y.c)), add(mul(x.c, y.b), mul(x.d, y.d))};
}

LatticeVec operator*(const Mat2Z& m, const LatticeVec& v)
{
    return {add(mul(m.a, v.x), mul(m.b, v.y)), add(mul(m.c, v.x), mul(m.d, v.y))};
}

LatticeVec operator+(const LatticeVec& u, const LatticeVec& v)
{
    return {add(u.x, v.x), add(u.y, v.y)};
}

LatticeVec operator-(const LatticeVec& u, const LatticeVec& v)
{
    return {sub(u.x, v.x), sub(u.y, v.y)};
}

LatticeVec operator*(std::int64_t k, const LatticeVec& v)
{
    return {mul(k, v.x), mul(k, v.y)};
}

std::string to_string(const Mat2Z& m)
{
    return "[[" + std::to_string(m.a) + "," + std::to_string(m.b) + "],[" + std::to_string(m.c) + "," +
           std::to_string(m.d) + "]]";
}

std::string to_string(const LatticeVec& v)
{
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

Mod2Vec reduce_mod2(const LatticeVec& v)
{
    return {mod2(v.x), mod2(v.y)};
}

Mat2Z matrix_of_cycle(const CycleWord& c, std::size_t start)
{
    require_cusp(c);
    const std::size_t n = c.size();
    Mat2Z m = Mat2Z::identity();
    for (std::size_t k = 0; k < n; ++k)
        m = m * Mat2Z::companion(c[(start + k) % n]);
    return m;
}

bool is_hyperbolic(const Mat2Z& m)
{
    if (m.det() != 1)
        throw InvalidInput("hyperbolicity is defined for det 1, got det " + std::to_string(m.det()));
    const auto t = m.trace();
    return t > 2 || t < -2;
}

bool check_identity_mod2(const Mat2Z& m)
{
    return mod2(m.a) == 1 && mod2(m.b) == 0 && mod2(m.c) == 0 && mod2(m.d) == 1;
}

std::vector<LatticeVec> boundary_lattice_vectors(const CycleWord& c, std::size_t count, std::size_t start)
{
    require_cusp(c);
    if (count < 2)
        throw InvalidInput("need at least two lattice vectors");
    const std::size_t n = c.size();
    std::vector<LatticeVec> v;
    v.reserve(count);
    v.push_back({1, 0});
    v.push_back({0, 1});
    for (std::size_t i = 1; i + 1 < count; ++i) {
        const auto e = c[(start + i - 1) % n];
        v.push_back(e * v[i] - v[i - 1]);
    }
    return v;
}

Mod2Vec to_eigenbasis_mod2(const Mod2Vec& t, std::int64_t e_n)
{
    return {mod2(t[0] + t[1] * (e_n / 2)), t[1]};
}

InvolutionDatum build_involution_datum(const SymmetricStructure& s)
{
    const CycleWord& c = s.cycle();
    require_cusp(c);
    const std::size_t n = c.size();
    const std::size_t f = s.axis().second_fixed();

    InvolutionDatum out;
    out.start = (f + 1) % n;
    out.word = c.rotated(out.start);
    const auto e_n = out.word[n - 1];
    const auto e_half = out.word[n / 2 - 1];
    if (e_n % 2 != 0 || e_half % 2 != 0)
        throw InvalidInput("fixed entries of " + to_string(c) + " must be even");

    out.A = matrix_of_cycle(out.word);
    out.B = {1, e_n, 0, -1};

    const auto v = boundary_lattice_vectors(out.word, n / 2 + 2);
    out.u0_mod2 = reduce_mod2(LatticeVec{-(e_n / 2), 1});
    out.u_half_mod2 = reduce_mod2((e_half / 2) * v[n / 2] + v[n / 2 + 1]);

    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const Mod2Vec t{x, y};
            if (t == Mod2Vec{0, 0} || t == out.u0_mod2 || t == out.u_half_mod2)
                continue;
            out.t_candidates.push_back(t);
            out.t_candidates_eigen.push_back(to_eigenbasis_mod2(t, e_n));
        }
    }
    return out;
}

}  // namespace cuspsym
