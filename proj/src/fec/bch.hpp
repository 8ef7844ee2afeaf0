#pragma once

#include "common/bits.hpp"
#include "gf/galois_field.hpp"

#include <memory>
#include <span>
#include <vector>

namespace nemesys::fec {

enum class DecodeStatus { clean, corrected, failure };

const char* to_string(DecodeStatus s);

struct DecodeResult {
    /// The k message bits; empty when status == failure.
    BitVector message;
    /// Codeword bit indices that were flipped, ascending.
    std::vector<std::size_t> corrected_positions;
    DecodeStatus status = DecodeStatus::failure;
};

/// Shortened binary BCH code over GF(2^m).
///
/// The parent code has length 2^m - 1; the shortened code drops `shorten_by`
/// leading message bits (fixed at zero), so a codeword bit at index i carries
/// the coefficient of x^(n-1-i) in both the shortened and the parent code.
/// Index 0 is the first transmitted bit. Codewords are systematic: the k
/// message bits come first, followed by n - k parity bits.
class BchCode {
public:
    /// Narrow-sense code correcting `t` errors with `k` message bits. The
    /// generator is the lcm of the minimal polynomials of alpha^1..alpha^2t.
    /// Throws std::invalid_argument if the code does not fit in GF(2^m).
    static BchCode build(unsigned t, unsigned k, unsigned m = 8);

    unsigned n() const { return m_n; }
    unsigned k() const { return m_k; }
    unsigned t() const { return m_t; }
    unsigned m() const { return m_field->m(); }
    unsigned shorten_by() const { return m_field->order() - m_n; }
    unsigned parity_bits() const { return m_n - m_k; }
    /// g(x) coefficients over GF(2), lowest degree first.
    const std::vector<std::uint8_t>& generator() const { return m_generator; }
    const gf::GaloisField& field() const { return *m_field; }

    /// Systematic encoding: message followed by the remainder of
    /// m(x) * x^(n-k) divided by g(x). Throws std::invalid_argument on a
    /// message that is not k bits long.
    BitVector encode(BitSpan message) const;

    /// S_j = r(alpha^j) for j = 1..2t. Throws std::invalid_argument unless
    /// received is n bits.
    std::vector<gf::Element> syndromes(BitSpan received) const;

    /// Syndromes -> Berlekamp-Massey -> Chien search -> flip -> re-check.
    DecodeResult decode(BitSpan received) const;

private:
    BchCode(std::shared_ptr<const gf::GaloisField> field, unsigned t, unsigned k,
            std::vector<std::uint8_t> generator);

    std::shared_ptr<const gf::GaloisField> m_field;
    unsigned m_t;
    unsigned m_k;
    unsigned m_n;
    std::vector<std::uint8_t> m_generator;
};

/// Error-locator polynomial Lambda(x) = prod (1 - X_l x) from 2t syndromes.
gf::FieldPolynomial berlekamp_massey(const gf::GaloisField& field,
                                     std::span<const gf::Element> syndromes);

/// Codeword positions p in [0, n) whose locator X = alpha^(n-1-p) satisfies
/// Lambda(X^-1) = 0. Roots that fall in the shortened-away part of the
/// parent code are not reported, so callers compare the count with the
/// locator degree.
std::vector<std::size_t> chien_search(const BchCode& code, const gf::FieldPolynomial& locator);

}  // namespace nemesys::fec
