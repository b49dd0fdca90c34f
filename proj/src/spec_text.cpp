#include "levylab/spec_text.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>

namespace levylab {

namespace {

std::string shortest(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct Field {
  std::string_view value;
  std::size_t column;
};

// Parses a floating-point number at text[pos...]; advances pos.
std::optional<double> read_number(std::string_view text, std::size_t& pos) {
  double value = 0.0;
  const char* first = text.data() + pos;
  const char* last = text.data() + text.size();
  // from_chars rejects a leading '+'
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr == first) return std::nullopt;
  pos += static_cast<std::size_t>(res.ptr - first);
  return value;
}

double parse_full_number(const Field& field, const char* what) {
  std::size_t pos = 0;
  const auto v = read_number(field.value, pos);
  if (!v || pos != field.value.size()) {
    throw SpecParseError(std::string("expected a number for ") + what, field.column + pos);
  }
  return *v;
}

int parse_dim(const Field& field) {
  int dim = 0;
  const char* first = field.value.data();
  const char* last = first + field.value.size();
  const auto res = std::from_chars(first, last, dim);
  if (res.ec != std::errc() || res.ptr != last) {
    throw SpecParseError("expected an integer dimension", field.column + static_cast<std::size_t>(res.ptr - first));
  }
  if (dim < kMinDim || dim > kMaxDim) {
    throw SpecParseError("dim must be between 2 and 8", field.column);
  }
  return dim;
}

std::vector<PowerTerm> parse_terms(const Field& field) {
  std::vector<PowerTerm> terms;
  const std::string_view text = field.value;
  std::size_t pos = 0;
  while (true) {
    const std::size_t term_start = pos;
    double coefficient = 1.0;
    if (pos < text.size() && text[pos] != 't') {
      const auto c = read_number(text, pos);
      if (!c) throw SpecParseError("expected a coefficient or 't'", field.column + pos);
      if (pos >= text.size() || text[pos] != '*') throw SpecParseError("expected '*' after coefficient", field.column + pos);
      ++pos;
      coefficient = *c;
    }
    if (pos >= text.size() || text[pos] != 't') throw SpecParseError("expected 't'", field.column + pos);
    ++pos;
    double exponent = 1.0;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      const std::size_t exp_start = pos;
      const auto e = read_number(text, pos);
      if (!e) throw SpecParseError("expected an exponent after '^'", field.column + pos);
      if (!(*e >= 1.0) || !std::isfinite(*e)) throw SpecParseError("exponent must be ≥ 1", field.column + exp_start);
      exponent = *e;
    }
    if (!(coefficient >= 0.0) || !std::isfinite(coefficient)) {
      throw SpecParseError("coefficient must be nonnegative", field.column + term_start);
    }
    terms.push_back({coefficient, exponent});
    if (pos == text.size()) break;
    if (text[pos] != '+') throw SpecParseError("expected '+' between terms", field.column + pos);
    ++pos;
  }
  return terms;
}

}  // namespace

SpecParseError::SpecParseError(const std::string& message, std::size_t column)
    : std::invalid_argument("column " + std::to_string(column) + ": " + message), reason_(message), column_(column) {}

NormSpec parse_spec(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  if (kind != "lq" && kind != "orlicz" && kind != "euclidean") {
    throw SpecParseError("unknown norm kind '" + std::string(kind) + "' (expected lq, orlicz or euclidean)", 1);
  }

  std::map<std::string, Field, std::less<>> fields;
  std::size_t pos = colon;
  while (pos != std::string_view::npos && pos < text.size()) {
    const std::size_t start = pos + 1;
    const std::size_t next = text.find(':', start);
    const std::string_view segment = text.substr(start, next == std::string_view::npos ? std::string_view::npos : next - start);
    const std::size_t eq = segment.find('=');
    if (eq == std::string_view::npos) throw SpecParseError("expected key=value", start + 1);
    const std::string key(segment.substr(0, eq));
    const bool known = key == "dim" || (kind == "lq" && key == "q") || (kind == "orlicz" && key == "terms");
    if (!known) throw SpecParseError("unknown field '" + key + "' for " + std::string(kind), start + 1);
    if (fields.count(key)) throw SpecParseError("duplicate field '" + key + "'", start + 1);
    fields.emplace(key, Field{segment.substr(eq + 1), start + eq + 2});
    pos = next;
  }

  auto require = [&](const char* key) -> const Field& {
    const auto it = fields.find(key);
    if (it == fields.end()) throw SpecParseError(std::string("missing field '") + key + "'", text.size() + 1);
    return it->second;
  };

  const int dim = parse_dim(require("dim"));
  if (kind == "euclidean") return NormSpec::euclidean(dim);

  if (kind == "lq") {
    const Field& qf = require("q");
    const double q = qf.value == "inf" ? std::numeric_limits<double>::infinity() : parse_full_number(qf, "q");
    if (!(q >= 1.0)) throw SpecParseError("q must be ≥ 1", qf.column);
    return NormSpec::lq(q, dim);
  }

  const Field& tf = require("terms");
  try {
    return NormSpec::orlicz(OrliczFunction::normalized(parse_terms(tf)), dim);
  } catch (const SpecParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SpecParseError(e.what(), tf.column);
  }
}

std::string serialize_spec(const NormSpec& spec) {
  const std::string dim = ":dim=" + std::to_string(spec.dim());
  switch (spec.kind()) {
    case NormKind::Euclidean:
      return "euclidean" + dim;
    case NormKind::Lq:
      return "lq:q=" + shortest(spec.q()) + dim;
    case NormKind::Orlicz: {
      std::string terms;
      for (const auto& [a, q] : spec.orlicz_function().terms()) {
        if (!terms.empty()) terms += '+';
        terms += shortest(a) + "*t^" + shortest(q);
      }
      return "orlicz:terms=" + terms + dim;
    }
  }
  throw std::logic_error("unknown norm kind");
}

std::string spec_slug(const NormSpec& spec) {
  std::string slug = serialize_spec(spec);
  for (char& c : slug) {
    const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                      c == '-' || c == '=';
    if (!safe) c = '_';
  }
  return slug;
}

}  // namespace levylab
