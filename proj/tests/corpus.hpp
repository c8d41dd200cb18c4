#pragma once

namespace cauchy::testing {

struct CorpusEntry {
  const char* source;  // expression in the variable t
  double x0;           // evaluation point inside the domain
};

// Twenty analytic expressions with well-behaved evaluation points, used for
// derivative oracles, limit symmetry and embedding-coherence checks.
inline constexpr CorpusEntry kCorpus[20] = {
    {"t^2", 3.0},
    {"t^3 - 2*t", 1.2},
    {"sin(t)", 0.7},
    {"cos(t)", 1.1},
    {"tan(t)", 0.5},
    {"exp(t)", -0.3},
    {"log(t)", 2.5},
    {"sqrt(t)", 4.0},
    {"atan(t)", 1.3},
    {"sin(t)/t", 0.9},
    {"exp(t)*cos(t)", 0.7},
    {"1/t", 2.0},
    {"(t^2 + 1)/(t + 3)", 1.5},
    {"log(t^2 + 1)", 0.8},
    {"sqrt(t^2 + 1)", 1.7},
    {"exp(-t^2)", 0.6},
    {"t^(1/2)*sin(t)", 2.2},
    {"atan(t^2)", 0.9},
    {"cos(t)^3", 0.4},
    {"exp(sin(t))", 1.0},
};

}  // namespace cauchy::testing
