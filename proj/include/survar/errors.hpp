#pragma once

#include <stdexcept>
#include <string>

namespace survar {

// Sampling design violates its preconditions (n_h out of range, H too small
// to collapse, estimator applied to the wrong design).
class invalid_design_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// The requested quantity is undefined for the given data (single-unit strata
// for the HT variance, zero pooled variance feeding the hierarchical model,
// fewer than four pseudo-strata for the base-measure estimate).
class not_estimable_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class diagnostics_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace survar
