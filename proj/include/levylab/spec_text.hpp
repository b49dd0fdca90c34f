#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "levylab/norm.hpp"

namespace levylab {

// Syntax or semantic error in a norm spec string. column() is 1-based.
class SpecParseError : public std::invalid_argument {
 public:
  SpecParseError(const std::string& message, std::size_t column);
  std::size_t column() const { return column_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
  std::size_t column_;
};

// Grammar (fields after the kind may appear in any order, each exactly once):
//
//   spec      := lq | orlicz | euclidean
//   lq        := "lq" ":q=" (number | "inf") ":dim=" integer
//   orlicz    := "orlicz" ":terms=" term ("+" term)* ":dim=" integer
//   euclidean := "euclidean" ":dim=" integer
//   term      := [number "*"] "t" ["^" number]
//
// Orlicz coefficients are rescaled so that M(1) = 1.
NormSpec parse_spec(std::string_view text);

// Canonical form: shortest round-trip numbers, fields in grammar order.
std::string serialize_spec(const NormSpec& spec);

// serialize_spec with characters unsafe in file names replaced.
std::string spec_slug(const NormSpec& spec);

}  // namespace levylab
