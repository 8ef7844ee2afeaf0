#include "fec/bch.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nemesys::fec {

const char* to_string(DecodeStatus s)
{
    switch (s) {
    case DecodeStatus::clean: return "clean";
    case DecodeStatus::corrected: return "corrected";
    case DecodeStatus::failure: return "failure";
    }
    return "unknown";
}

namespace {

std::vector<std::uint8_t> gf2_multiply(const std::vector<std::uint8_t>& a,
                                       const std::vector<std::uint8_t>& b)
{
    std::vector<std::uint8_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j)
                out[i + j] ^= b[j];
    return out;
}

std::vector<std::uint8_t> generator_polynomial(const gf::GaloisField& field, unsigned t)
{
    std::vector<std::uint8_t> g{1};
    std::vector<bool> covered(field.order(), false);
    for (std::uint32_t i = 1; i <= 2 * t; ++i) {
        if (covered[i % field.order()])
            continue;
        for (auto c : field.cyclotomic_coset(i))
            covered[c] = true;
        g = gf2_multiply(g, field.minimal_polynomial(i));
    }
    return g;
}

}  // namespace

BchCode::BchCode(std::shared_ptr<const gf::GaloisField> field, unsigned t, unsigned k,
                 std::vector<std::uint8_t> generator)
    : m_field(std::move(field)),
      m_t(t),
      m_k(k),
      m_n(k + static_cast<unsigned>(generator.size()) - 1),
      m_generator(std::move(generator))
{
}

BchCode BchCode::build(unsigned t, unsigned k, unsigned m)
{
    if (t < 1)
        throw std::invalid_argument("BCH: t must be at least 1");
    if (k < 1)
        throw std::invalid_argument("BCH: k must be at least 1");
    auto field = std::make_shared<const gf::GaloisField>(m);
    if (2 * t >= field->order())
        throw std::invalid_argument("BCH: t too large for GF(2^" + std::to_string(m) + ")");
    auto g = generator_polynomial(*field, t);
    const auto parity = static_cast<unsigned>(g.size()) - 1;
    if (static_cast<unsigned long long>(k) + parity > field->order())
        throw std::invalid_argument("BCH: (k=" + std::to_string(k) + ", t=" + std::to_string(t) +
                                    ") needs n=" + std::to_string(k + parity) +
                                    " > 2^m-1=" + std::to_string(field->order()));
    return BchCode(std::move(field), t, k, std::move(g));
}

BitVector BchCode::encode(BitSpan message) const
{
    if (message.size() != m_k)
        throw std::invalid_argument("BCH encode: message must be " + std::to_string(m_k) +
                                    " bits, got " + std::to_string(message.size()));
    const unsigned r = parity_bits();
    // reg[j] holds the coefficient of x^j of the running remainder.
    std::vector<std::uint8_t> reg(r, 0);
    for (auto bit : message) {
        const std::uint8_t feedback = (bit & 1U) ^ reg[r - 1];
        for (unsigned j = r - 1; j > 0; --j)
            reg[j] = reg[j - 1] ^ (feedback & m_generator[j]);
        reg[0] = feedback & m_generator[0];
    }
    BitVector codeword(message.begin(), message.end());
    codeword.reserve(m_n);
    for (unsigned j = r; j-- > 0;)
        codeword.push_back(reg[j]);
    return codeword;
}

std::vector<gf::Element> BchCode::syndromes(BitSpan received) const
{
    if (received.size() != m_n)
        throw std::invalid_argument("BCH syndromes: received word must be " +
                                    std::to_string(m_n) + " bits");
    std::vector<gf::Element> s(2 * m_t, 0);
    for (std::size_t i = 0; i < m_n; ++i) {
        if (!(received[i] & 1U))
            continue;
        const long long degree = static_cast<long long>(m_n - 1 - i);
        for (unsigned j = 1; j <= 2 * m_t; ++j)
            s[j - 1] ^= m_field->alpha_power(degree * j);
    }
    return s;
}

gf::FieldPolynomial berlekamp_massey(const gf::GaloisField& field,
                                     std::span<const gf::Element> syndromes)
{
    std::vector<gf::Element> c{1};  // current connection polynomial
    std::vector<gf::Element> b{1};  // copy of c before the last length change
    std::size_t length = 0;
    std::size_t shift = 1;
    gf::Element last_discrepancy = 1;

    for (std::size_t step = 0; step < syndromes.size(); ++step) {
        gf::Element d = syndromes[step];
        for (std::size_t i = 1; i <= length && i < c.size(); ++i)
            d ^= field.multiply(c[i], syndromes[step - i]);
        if (d == 0) {
            ++shift;
            continue;
        }
        const gf::Element coef = field.divide(d, last_discrepancy);
        auto previous = c;
        if (c.size() < b.size() + shift)
            c.resize(b.size() + shift, 0);
        for (std::size_t i = 0; i < b.size(); ++i)
            c[i + shift] ^= field.multiply(coef, b[i]);
        if (2 * length <= step) {
            length = step + 1 - length;
            b = std::move(previous);
            last_discrepancy = d;
            shift = 1;
        } else {
            ++shift;
        }
    }
    gf::FieldPolynomial locator{std::move(c)};
    locator.normalize();
    return locator;
}

std::vector<std::size_t> chien_search(const BchCode& code, const gf::FieldPolynomial& locator)
{
    std::vector<std::size_t> positions;
    if (locator.degree() <= 0)
        return positions;
    const auto& field = code.field();
    const auto n = code.n();
    for (std::size_t p = 0; p < n; ++p) {
        const long long degree = static_cast<long long>(n - 1 - p);
        if (field.eval_poly(locator, field.alpha_power(-degree)) == 0)
            positions.push_back(p);
    }
    return positions;
}

DecodeResult BchCode::decode(BitSpan received) const
{
    DecodeResult result;
    const auto s = syndromes(received);
    if (std::all_of(s.begin(), s.end(), [](gf::Element e) { return e == 0; })) {
        result.message.assign(received.begin(), received.begin() + m_k);
        result.status = DecodeStatus::clean;
        return result;
    }

    const auto locator = berlekamp_massey(*m_field, s);
    const int degree = locator.degree();
    if (degree < 1 || degree > static_cast<int>(m_t))
        return result;

    auto positions = chien_search(*this, locator);
    if (positions.size() != static_cast<std::size_t>(degree))
        return result;

    BitVector corrected(received.begin(), received.end());
    for (auto p : positions)
        corrected[p] ^= 1U;
    const auto recheck = syndromes(corrected);
    if (!std::all_of(recheck.begin(), recheck.end(), [](gf::Element e) { return e == 0; }))
        return result;

    result.message.assign(corrected.begin(), corrected.begin() + m_k);
    result.corrected_positions = std::move(positions);
    result.status = DecodeStatus::corrected;
    return result;
}

}  // namespace nemesys::fec
