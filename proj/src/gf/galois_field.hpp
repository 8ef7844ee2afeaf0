#pragma once

#include <cstdint>
#include <vector>

namespace nemesys::gf {

using Element = std::uint16_t;

/// Polynomial over GF(2^m), coefficients lowest degree first. The zero
/// polynomial is the empty vector once normalized.
struct FieldPolynomial {
    std::vector<Element> coefficients;

    /// Degree of the normalized polynomial; -1 for the zero polynomial.
    int degree() const;
    /// Drop trailing zero coefficients.
    void normalize();
    bool is_zero() const { return degree() < 0; }

    friend bool operator==(const FieldPolynomial&, const FieldPolynomial&) = default;
};

/// Binary extension field GF(2^m) backed by log/antilog tables.
///
/// Elements are polynomials over GF(2) of degree < m packed into an integer,
/// bit i holding the coefficient of x^i. Addition is XOR. The primitive
/// element alpha is x (value 2).
class GaloisField {
public:
    /// x^8 + x^4 + x^3 + x^2 + 1
    static constexpr std::uint32_t kDefaultPrimitive8 = 0x11D;

    /// Field with the conventional primitive polynomial for the given degree.
    explicit GaloisField(unsigned m = 8);
    GaloisField(unsigned m, std::uint32_t primitive_poly);

    unsigned m() const { return m_m; }
    std::uint32_t primitive_poly() const { return m_prim; }
    /// Multiplicative group order, 2^m - 1.
    std::uint32_t order() const { return m_order; }

    static Element add(Element a, Element b) { return a ^ b; }
    Element multiply(Element a, Element b) const;
    /// Throws std::domain_error for a == 0.
    Element inverse(Element a) const;
    /// Throws std::domain_error for b == 0.
    Element divide(Element a, Element b) const;
    /// alpha^(e mod order); negative exponents wrap.
    Element alpha_power(long long e) const;
    /// Discrete log base alpha. Throws std::domain_error for a == 0.
    std::uint32_t log(Element a) const;
    Element pow(Element a, long long e) const;

    /// Horner evaluation of p at x.
    Element eval_poly(const FieldPolynomial& p, Element x) const;
    FieldPolynomial poly_multiply(const FieldPolynomial& a, const FieldPolynomial& b) const;
    FieldPolynomial poly_add(const FieldPolynomial& a, const FieldPolynomial& b) const;

    /// Minimal polynomial over GF(2) of alpha^i, coefficients lowest degree
    /// first (each 0 or 1).
    std::vector<std::uint8_t> minimal_polynomial(std::uint32_t i) const;
    /// Exponents of the cyclotomic coset containing i, i.e. {i, 2i, 4i, ...} mod order.
    std::vector<std::uint32_t> cyclotomic_coset(std::uint32_t i) const;

private:
    void build_tables();

    unsigned m_m;
    std::uint32_t m_prim;
    std::uint32_t m_order;
    std::vector<Element> m_exp;  // 2 * order entries to skip a modulo in multiply
    std::vector<std::uint32_t> m_log;
};

/// Conventional primitive polynomial for GF(2^m), 2 <= m <= 16.
std::uint32_t default_primitive_poly(unsigned m);

}  // namespace nemesys::gf
