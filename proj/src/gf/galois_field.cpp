#include "gf/galois_field.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace nemesys::gf {

int FieldPolynomial::degree() const
{
    for (auto i = static_cast<int>(coefficients.size()) - 1; i >= 0; --i)
        if (coefficients[static_cast<std::size_t>(i)] != 0)
            return i;
    return -1;
}

void FieldPolynomial::normalize()
{
    coefficients.resize(static_cast<std::size_t>(degree() + 1));
}

std::uint32_t default_primitive_poly(unsigned m)
{
    static constexpr std::array<std::uint32_t, 17> table = {
        0,       0,       0x7,     0xB,     0x13,    0x25,    0x43,    0x89,    0x11D,
        0x211,   0x409,   0x805,   0x1053,  0x201B,  0x4443,  0x8003,  0x1100B,
    };
    if (m < 2 || m > 16)
        throw std::invalid_argument("GF(2^m): m must be in [2, 16], got " + std::to_string(m));
    return table[m];
}

GaloisField::GaloisField(unsigned m) : GaloisField(m, default_primitive_poly(m)) {}

GaloisField::GaloisField(unsigned m, std::uint32_t primitive_poly)
    : m_m(m), m_prim(primitive_poly), m_order((1U << m) - 1U)
{
    if (m < 2 || m > 16)
        throw std::invalid_argument("GF(2^m): m must be in [2, 16], got " + std::to_string(m));
    if ((primitive_poly >> m) != 1U)
        throw std::invalid_argument("GF(2^m): primitive polynomial degree does not match m");
    build_tables();
}

void GaloisField::build_tables()
{
    m_exp.assign(2 * static_cast<std::size_t>(m_order), 0);
    m_log.assign(static_cast<std::size_t>(m_order) + 1, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < m_order; ++i) {
        if (i > 0 && x == 1)
            throw std::invalid_argument("GF(2^m): polynomial is not primitive");
        m_exp[i] = static_cast<Element>(x);
        m_log[x] = i;
        x <<= 1;
        if (x & (1U << m_m))
            x ^= m_prim;
    }
    if (x != 1)
        throw std::invalid_argument("GF(2^m): polynomial is not primitive");
    for (std::uint32_t i = m_order; i < 2 * m_order; ++i)
        m_exp[i] = m_exp[i - m_order];
}

Element GaloisField::multiply(Element a, Element b) const
{
    if (a == 0 || b == 0)
        return 0;
    return m_exp[m_log[a] + m_log[b]];
}

Element GaloisField::inverse(Element a) const
{
    if (a == 0)
        throw std::domain_error("GF(2^m): zero has no multiplicative inverse");
    return m_exp[(m_order - m_log[a]) % m_order];
}

Element GaloisField::divide(Element a, Element b) const
{
    return multiply(a, inverse(b));
}

Element GaloisField::alpha_power(long long e) const
{
    auto r = e % static_cast<long long>(m_order);
    if (r < 0)
        r += m_order;
    return m_exp[static_cast<std::size_t>(r)];
}

std::uint32_t GaloisField::log(Element a) const
{
    if (a == 0 || a > m_order)
        throw std::domain_error("GF(2^m): logarithm undefined for this element");
    return m_log[a];
}

Element GaloisField::pow(Element a, long long e) const
{
    if (a == 0)
        return e == 0 ? 1 : 0;
    return alpha_power(static_cast<long long>(m_log[a]) * (e % static_cast<long long>(m_order)));
}

Element GaloisField::eval_poly(const FieldPolynomial& p, Element x) const
{
    Element acc = 0;
    for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it)
        acc = multiply(acc, x) ^ *it;
    return acc;
}

FieldPolynomial GaloisField::poly_multiply(const FieldPolynomial& a, const FieldPolynomial& b) const
{
    if (a.is_zero() || b.is_zero())
        return {};
    FieldPolynomial out;
    out.coefficients.assign(a.coefficients.size() + b.coefficients.size() - 1, 0);
    for (std::size_t i = 0; i < a.coefficients.size(); ++i)
        for (std::size_t j = 0; j < b.coefficients.size(); ++j)
            out.coefficients[i + j] ^= multiply(a.coefficients[i], b.coefficients[j]);
    out.normalize();
    return out;
}

FieldPolynomial GaloisField::poly_add(const FieldPolynomial& a, const FieldPolynomial& b) const
{
    FieldPolynomial out;
    out.coefficients.assign(std::max(a.coefficients.size(), b.coefficients.size()), 0);
    for (std::size_t i = 0; i < a.coefficients.size(); ++i)
        out.coefficients[i] ^= a.coefficients[i];
    for (std::size_t i = 0; i < b.coefficients.size(); ++i)
        out.coefficients[i] ^= b.coefficients[i];
    out.normalize();
    return out;
}

std::vector<std::uint32_t> GaloisField::cyclotomic_coset(std::uint32_t i) const
{
    std::vector<std::uint32_t> coset;
    std::uint32_t e = i % m_order;
    while (std::find(coset.begin(), coset.end(), e) == coset.end()) {
        coset.push_back(e);
        e = static_cast<std::uint32_t>((2ULL * e) % m_order);
    }
    return coset;
}

std::vector<std::uint8_t> GaloisField::minimal_polynomial(std::uint32_t i) const
{
    // Product of (x - alpha^c) over the conjugates; the result has binary coefficients.
    FieldPolynomial p{{1}};
    for (auto c : cyclotomic_coset(i))
        p = poly_multiply(p, FieldPolynomial{{alpha_power(c), 1}});
    std::vector<std::uint8_t> out;
    out.reserve(p.coefficients.size());
    for (auto c : p.coefficients) {
        if (c > 1)
            throw std::logic_error("minimal polynomial has a non-binary coefficient");
        out.push_back(static_cast<std::uint8_t>(c));
    }
    return out;
}

}  // namespace nemesys::gf
