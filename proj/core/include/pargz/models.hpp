#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "pargz/tokens.hpp"

namespace pargz {

/// Inputs to the closed-form compression models for random DNA.
struct ModelParams {
    unsigned window = kWindowSize;  // W
    double mean_match_length = 7.6; // l_a, measured on real streams
    unsigned k_min = 3;
    unsigned k_max = 258; // terms vanish long before this
    unsigned alphabet = 4;
};

/// p_k: probability that some match of length k starts at a given position
/// of a random block, with W - k + 1 candidate source positions. Exact
/// form 1 - (1 - alphabet^-k)^(W-k+1).
double match_prob(unsigned k, unsigned window, unsigned alphabet = 4);

/// Poisson approximation 1 - exp(-alphabet^-k (W-k+1)).
double match_prob_poisson(unsigned k, unsigned window, unsigned alphabet = 4);

/// log10(1 - p_k), computed in log space; p_3 at W = 2^15 leaves
/// 1 - p_3 ~ 10^-224, far below what double subtraction can represent.
double log10_one_minus_match_prob(unsigned k, unsigned window, unsigned alphabet = 4);

/// p^l: probability that non-greedy parsing emits a literal at a position,
/// summed over the length of the maximal current match:
/// sum_k p_k (1 - p_{k+1}) p_{k+1}.
double literal_prob(const ModelParams& p);

struct LiteralEstimate {
    double expected_literals = 0; // E^l = p^l W / (l_a + 2)
    double l1 = 0;                // E^l / W, the first block's literal fraction
};

LiteralEstimate expected_literals(const ModelParams& p);

struct CurvePoint {
    unsigned index = 0; // block index i, 1-based
    double literal_fraction = 0;      // L_i
    double undetermined_fraction = 0; // 1 - L_i
};

/// L_i = 1 - (1 - L_1)^i: the fraction of block i consisting of literals or
/// copies of literals, under the per-block independence model. The closed
/// form and the recurrence L_{i+1} = L_1 + (1 - L_1) L_i agree to machine
/// precision.
std::vector<CurvePoint> literal_fraction_curve(double l1, unsigned n_blocks);

void write_model_csv(std::ostream& os, std::span<const CurvePoint> curve);

/// Where the reference parser may look for match sources.
enum class MatchScope : std::uint8_t {
    window,         // anywhere in the trailing W bytes
    previous_block, // only positions of the previous W-sized block
};

/// Reference non-greedy (lazy) parser: if the longest match at i+1 beats
/// the longest at i, emit s[i] as a literal and take the later match.
/// Matches are found by exhaustive search (3-byte anchor index), minimum
/// length 3, maximum 258, smallest offset among equals. Slow by design;
/// this is the oracle the closed-form model is validated against.
std::vector<Token> simulate_nongreedy_parse(std::string_view s, unsigned window,
                                            MatchScope scope = MatchScope::window);

/// Expand a token sequence back into bytes (validity check for parses).
std::string decode_tokens(std::span<const Token> tokens);

} // namespace pargz
