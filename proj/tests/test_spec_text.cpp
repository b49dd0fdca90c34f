#include <doctest.h>

#include <limits>
#include <string>

#include "levylab/spec_text.hpp"

using namespace levylab;

namespace {

std::size_t error_column(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const SpecParseError& e) {
    return e.column();
  }
  return 0;
}

std::string error_reason(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const SpecParseError& e) {
    return e.reason();
  }
  return {};
}

}  // namespace

TEST_CASE("documented forms") {
  const auto l4 = parse_spec("lq:q=4:dim=3");
  CHECK(l4.kind() == NormKind::Lq);
  CHECK(l4.q() == 4.0);
  CHECK(l4.dim() == 3);

  const auto orlicz = parse_spec("orlicz:terms=0.5*t^3+0.5*t^5:dim=3");
  CHECK(orlicz.kind() == NormKind::Orlicz);
  CHECK(orlicz.orlicz_function().theorem2_eligible());

  const auto euclid = parse_spec("euclidean:dim=3");
  CHECK(euclid.kind() == NormKind::Euclidean);

  CHECK(parse_spec("lq:q=inf:dim=3").is_max_norm());
  CHECK(parse_spec("lq:dim=3:q=4") == l4);
  CHECK(parse_spec("orlicz:terms=t^4:dim=2").orlicz_function().terms().front().coefficient == 1.0);
}

TEST_CASE("orlicz coefficients are normalized") {
  const auto spec = parse_spec("orlicz:terms=1*t^3+1*t^5:dim=3");
  CHECK(spec == parse_spec("orlicz:terms=0.5*t^3+0.5*t^5:dim=3"));
  CHECK(serialize_spec(spec) == "orlicz:terms=0.5*t^3+0.5*t^5:dim=3");
}

TEST_CASE("round trip") {
  for (const char* text : {"lq:q=4:dim=3", "lq:q=2.5:dim=8", "lq:q=inf:dim=2", "lq:q=1:dim=3", "euclidean:dim=5",
                           "orlicz:terms=0.9*t^3+0.1*t^2.5:dim=3", "orlicz:terms=0.1*t^3.3333333333333335:dim=3",
                           "lq:dim=4:q=3", "orlicz:terms=t+3*t^2:dim=2"}) {
    const auto spec = parse_spec(text);
    const auto canonical = serialize_spec(spec);
    CHECK(parse_spec(canonical) == spec);
    CHECK(serialize_spec(parse_spec(canonical)) == canonical);
  }
  CHECK(serialize_spec(parse_spec("lq:dim=4:q=3")) == "lq:q=3:dim=4");
  CHECK(serialize_spec(NormSpec::lq(std::numeric_limits<double>::infinity(), 3)) == "lq:q=inf:dim=3");
}

TEST_CASE("syntax errors carry columns") {
  CHECK(error_column("lp:q=4:dim=3") == 1);
  CHECK(error_column("lq:q=x:dim=3") == 6);
  CHECK(error_column("lq:q=4:dim=three") == 12);
  CHECK(error_column("lq:q=4") == 7);
  CHECK(error_reason("lq:q=4") == "missing field 'dim'");
  CHECK(error_column("lq:q=4:dim=3:q=5") == 14);
  CHECK(error_reason("lq:q=4:dim=3:q=5") == "duplicate field 'q'");
  CHECK(error_column("lq:terms=t:dim=3") == 4);
  CHECK(error_column("lq:q4:dim=3") == 4);
  CHECK(error_column("orlicz:terms=0.5*t^3+0.5t^5:dim=3") == 25);
  CHECK(error_reason("orlicz:terms=0.5*t^3+0.5t^5:dim=3") == "expected '*' after coefficient");
  CHECK(error_column("orlicz:terms=t^3+:dim=3") == 18);
}

TEST_CASE("semantic errors") {
  CHECK(error_reason("lq:q=0.5:dim=3") == "q must be ≥ 1");
  CHECK(error_column("lq:q=0.5:dim=3") == 6);
  CHECK(error_reason("orlicz:terms=-1*t^3:dim=3") == "coefficient must be nonnegative");
  CHECK(error_reason("orlicz:terms=t^0.5:dim=3") == "exponent must be ≥ 1");
  CHECK(error_reason("lq:q=4:dim=9") == "dim must be between 2 and 8");
  CHECK(error_reason("lq:q=4:dim=1") == "dim must be between 2 and 8");
  CHECK_THROWS_AS(parse_spec("orlicz:terms=0*t^3:dim=3"), SpecParseError);
}

TEST_CASE("slugs are file-name safe") {
  CHECK(spec_slug(parse_spec("lq:q=4:dim=3")) == "lq_q=4_dim=3");
  CHECK(spec_slug(parse_spec("orlicz:terms=0.5*t^3+0.5*t^5:dim=3")) == "orlicz_terms=0.5_t_3_0.5_t_5_dim=3");
}
