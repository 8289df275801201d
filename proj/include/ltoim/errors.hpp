#pragma once

#include <stdexcept>
#include <string>

namespace ltoim {

// Bad input data or parameters. CLI maps this family to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested computation would exceed a configured enumeration cap.
// CLI maps this family to exit code 2.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateEdge : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SelfLoop : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class WeightSumExceedsOne : public ValidationError {
 public:
  explicit WeightSumExceedsOne(int node, double sum)
      : ValidationError("in-weights of node " + std::to_string(node) +
                        " sum to " + std::to_string(sum) + " > 1"),
        node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

class WeightOutOfRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsupportedFamilySize : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SingularGramian : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IndegreeTooLarge : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotADag : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotBipartite : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidDelta : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class MissingGap : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EnumerationTooLarge : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

class NetTooLarge : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

}  // namespace ltoim
