#include "pargz/models.hpp"

#include <cassert>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace pargz {

namespace {

void check_k(unsigned k, unsigned window)
{
    if (k < 1 || k > window)
        throw std::invalid_argument("match length k must be in [1, W]");
}

// ln(1 - p_k) = (W - k + 1) ln(1 - a^-k)
double log1m_match_prob(unsigned k, unsigned window, unsigned alphabet)
{
    const double per_pos = std::pow(static_cast<double>(alphabet), -static_cast<double>(k));
    return static_cast<double>(window - k + 1) * std::log1p(-per_pos);
}

} // namespace

double match_prob(unsigned k, unsigned window, unsigned alphabet)
{
    check_k(k, window);
    return -std::expm1(log1m_match_prob(k, window, alphabet));
}

double match_prob_poisson(unsigned k, unsigned window, unsigned alphabet)
{
    check_k(k, window);
    const double rate = std::pow(static_cast<double>(alphabet), -static_cast<double>(k)) *
                        static_cast<double>(window - k + 1);
    return -std::expm1(-rate);
}

double log10_one_minus_match_prob(unsigned k, unsigned window, unsigned alphabet)
{
    check_k(k, window);
    return log1m_match_prob(k, window, alphabet) / std::log(10.0);
}

double literal_prob(const ModelParams& p)
{
    if (p.k_min < 1 || p.k_max < p.k_min || p.k_max >= p.window)
        throw std::invalid_argument("need 1 <= k_min <= k_max < W");
    double sum = 0.0;
    for (unsigned k = p.k_min; k <= p.k_max; ++k) {
        const double pk = match_prob(k, p.window, p.alphabet);
        const double pk1 = match_prob(k + 1, p.window, p.alphabet);
        const double one_minus_pk1 = std::exp(log1m_match_prob(k + 1, p.window, p.alphabet));
        sum += pk * one_minus_pk1 * pk1;
    }
    return sum;
}

LiteralEstimate expected_literals(const ModelParams& p)
{
    if (!(p.mean_match_length > 0))
        throw std::invalid_argument("mean match length must be positive");
    LiteralEstimate e;
    e.expected_literals = literal_prob(p) * static_cast<double>(p.window) / (p.mean_match_length + 2.0);
    e.l1 = e.expected_literals / static_cast<double>(p.window);
    return e;
}

std::vector<CurvePoint> literal_fraction_curve(double l1, unsigned n_blocks)
{
    if (!(l1 > 0.0) || l1 > 1.0)
        throw std::invalid_argument("L_1 must be in (0, 1]");
    std::vector<CurvePoint> curve;
    curve.reserve(n_blocks);
    for (unsigned i = 1; i <= n_blocks; ++i) {
        // The undetermined fraction is the quantity plotted; computing it as
        // the power directly keeps the tail exact long after 1 - L_i would
        // round to zero.
        const double undet = std::pow(1.0 - l1, static_cast<double>(i));
        curve.push_back(CurvePoint{i, 1.0 - undet, undet});
    }
    return curve;
}

void write_model_csv(std::ostream& os, std::span<const CurvePoint> curve)
{
    os << "# pargz-csv-v1 literal-fraction-model\n";
    os << "i,L_i,one_minus_L_i\n";
    for (const CurvePoint& p : curve)
        os << p.index << ',' << p.literal_fraction << ',' << p.undetermined_fraction << '\n';
}

namespace {

/// Exhaustive longest-match search anchored on 3-byte prefixes: a match of
/// length >= 3 must begin with the same 3 bytes, so indexing those is
/// equivalent to scanning every source position.
class MatchFinder {
  public:
    MatchFinder(std::string_view s, unsigned window, MatchScope scope)
      : s_(s)
      , window_(window)
      , scope_(scope)
    {}

    struct Best {
        unsigned length = 0; // 0 = no match of length >= 3
        unsigned offset = 0; // smallest offset among the longest
    };

    Best longest_at(std::size_t pos)
    {
        Best best;
        if (pos + kMinMatchLen > s_.size())
            return best;
        const unsigned cap =
          static_cast<unsigned>(std::min<std::size_t>(kMaxMatchLen, s_.size() - pos));

        if (scope_ == MatchScope::window) {
            index_up_to(pos); // sources with a fully-past anchor
            // Overlapping sources at offset 1 and 2 are checked directly.
            for (std::size_t off = 1; off <= 2 && off <= pos; ++off)
                consider(pos, pos - off, cap, best);
            const auto it = index_.find(key_at(pos));
            if (it != index_.end()) {
                const std::size_t lo = pos >= window_ ? pos - window_ : 0;
                // Walk newest to oldest so equal lengths keep the smallest offset.
                for (auto r = it->second.rbegin(); r != it->second.rend(); ++r) {
                    if (*r < lo)
                        break;
                    consider(pos, *r, cap, best);
                }
            }
        } else {
            const std::size_t block = pos / window_;
            if (block == 0)
                return best;
            index_block(block - 1);
            const auto it = block_index_.find(key_at(pos));
            if (it != block_index_.end())
                for (auto r = it->second.rbegin(); r != it->second.rend(); ++r)
                    consider(pos, *r, cap, best);
        }
        return best;
    }

  private:
    using Key = std::uint32_t;

    Key key_at(std::size_t p) const
    {
        return (static_cast<Key>(static_cast<unsigned char>(s_[p])) << 16) |
               (static_cast<Key>(static_cast<unsigned char>(s_[p + 1])) << 8) |
               static_cast<Key>(static_cast<unsigned char>(s_[p + 2]));
    }

    void consider(std::size_t pos, std::size_t src, unsigned cap, Best& best) const
    {
        unsigned len = 0;
        while (len < cap && s_[src + len] == s_[pos + len])
            ++len;
        if (len >= kMinMatchLen &&
            (len > best.length || (len == best.length && pos - src < best.offset))) {
            best.length = len;
            best.offset = static_cast<unsigned>(pos - src);
        }
    }

    // Window mode: sources up to pos-3 have their anchor fully in the past.
    void index_up_to(std::size_t pos)
    {
        while (indexed_ + kMinMatchLen <= pos) {
            index_[key_at(indexed_)].push_back(indexed_);
            ++indexed_;
        }
    }

    void index_block(std::size_t block)
    {
        if (block_indexed_ == static_cast<std::ptrdiff_t>(block))
            return;
        block_index_.clear();
        const std::size_t begin = block * window_;
        const std::size_t end = std::min<std::size_t>(begin + window_, s_.size());
        for (std::size_t p = begin; p < end && p + kMinMatchLen <= s_.size(); ++p)
            block_index_[key_at(p)].push_back(p);
        block_indexed_ = static_cast<std::ptrdiff_t>(block);
    }

    std::string_view s_;
    unsigned window_;
    MatchScope scope_;
    std::unordered_map<Key, std::vector<std::size_t>> index_;
    std::size_t indexed_ = 0;
    std::unordered_map<Key, std::vector<std::size_t>> block_index_;
    std::ptrdiff_t block_indexed_ = -1;
};

} // namespace

std::vector<Token> simulate_nongreedy_parse(std::string_view s, unsigned window, MatchScope scope)
{
    if (s.empty())
        throw std::invalid_argument("input must not be empty");
    if (window < kMinMatchLen)
        throw std::invalid_argument("window too small");

    MatchFinder finder(s, window, scope);
    std::vector<Token> tokens;

    std::size_t i = 0;
    while (i < s.size()) {
        const MatchFinder::Best here = finder.longest_at(i);
        if (here.length >= kMinMatchLen) {
            const MatchFinder::Best after =
              i + 1 < s.size() ? finder.longest_at(i + 1) : MatchFinder::Best{};
            if (after.length > here.length) {
                // Deferring wins: literal now, the longer match next.
                tokens.push_back(Token::make_literal(static_cast<std::uint8_t>(s[i])));
                tokens.push_back(Token::make_match(after.offset, after.length));
                i += 1 + after.length;
                continue;
            }
            tokens.push_back(Token::make_match(here.offset, here.length));
            i += here.length;
            continue;
        }
        tokens.push_back(Token::make_literal(static_cast<std::uint8_t>(s[i])));
        ++i;
    }
    return tokens;
}

std::string decode_tokens(std::span<const Token> tokens)
{
    std::string out;
    for (const Token& t : tokens) {
        if (t.kind == Token::Kind::literal) {
            out.push_back(static_cast<char>(t.literal));
            continue;
        }
        if (t.offset == 0 || t.offset > out.size())
            throw std::invalid_argument("token offset outside produced data");
        std::size_t src = out.size() - t.offset;
        for (std::uint32_t k = 0; k < t.length; ++k)
            out.push_back(out[src++]);
    }
    return out;
}

} // namespace pargz
