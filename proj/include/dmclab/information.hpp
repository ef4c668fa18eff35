#pragma once

// Entropy functionals on channels and input distributions, all in bits.
//
// equivocation and mutual_information are written as independent code paths
// (posterior averaging and a KL sum, respectively) rather than as differences
// of entropies, so that the identities
//     equivocation = H(P) + H(W|P) - H(Q)
//     equivocation + mutual_information = H(P)
// are genuine cross-checks rather than tautologies.

#include "dmclab/channel.hpp"

namespace dmclab {

// Shannon entropy of a probability vector.
double entropy(const Distribution& p);

// H(W|P) = sum_x P(x) H(row x).
double conditional_entropy(const Channel& w, const Distribution& p);

// Q(z) = sum_x P(x) W(z|x).
Distribution output_distribution(const Channel& w, const Distribution& p);

// H(X|Z) for X ~ P pushed through W, computed by averaging the entropy of the
// posterior over inputs for each output.  This is the quantity whose maximum
// over P is the commitment capacity.
double equivocation(const Channel& w, const Distribution& p);

// I(X;Z) computed as sum_{x,z} P(x) W(z|x) log2( W(z|x) / Q(z) ).
double mutual_information(const Channel& w, const Distribution& p);

// sum over the support of p of -log2 p(i).  Scales the width of per-word
// probability brackets for typical words.
double sum_neg_log2(const Distribution& p);

// max over rows of sum over the row's support of -log2 W(z|x); the analogous
// scale for conditional brackets.
double max_row_sum_neg_log2(const Channel& w);

}  // namespace dmclab
