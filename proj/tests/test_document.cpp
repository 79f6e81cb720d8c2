#include <doctest.h>

#include "fixtures.hpp"
#include "tropmeas/document.hpp"
#include "tropmeas/monad.hpp"
#include "tropmeas/verify.hpp"

using namespace tropmeas;

namespace {

const char* kWorked = R"({
  "space": {"points": ["a", "b"], "dist": [[0, 2], [2, 0]]},
  "measures": {
    "m1": {"support": [{"atom": "a", "weight": 0}, {"atom": "b", "weight": -1}]},
    "m2": {"support": [{"atom": "b", "weight": 0}, {"atom": "a", "weight": -3}]},
    "M":  {"support": [{"atom": "m1", "weight": 0},
                       {"atom": {"support": [{"atom": "b", "weight": 0}]}, "weight": -2}]}
  }
})";

std::string with_measures(const std::string& measures) {
  return R"({"space": {"points": ["a", "b"], "dist": [[0, 2], [2, 0]]}, "measures": {)" +
         measures + "}}";
}

}  // namespace

TEST_CASE("parse the worked document") {
  const Document doc = parse_document(kWorked);
  CHECK(doc.space->size() == 2);
  CHECK(doc.measures.size() == 3);
  const auto& m1 = doc.measure("m1");
  CHECK(m1.ground() == doc.space);
  CHECK(*m1.weight_at(1) == -1.0);
  const auto& big = doc.measure("M");
  CHECK(big.ground()->level() == 1);
  CHECK(flatten(big) == m1);
  CHECK_THROWS_AS(doc.measure("nope"), DocumentError);
}

TEST_CASE("document errors") {
  auto fails_with = [](const std::string& text, const std::string& needle) {
    try {
      parse_document(text);
    } catch (const DocumentError& e) {
      const std::string what = e.what();
      CAPTURE(what);
      CHECK(what.find(needle) != std::string::npos);
      return;
    }
    FAIL("no error for: " << text);
  };
  fails_with(with_measures(R"("m1": {"support": [{"atom": "a", "weight": -1}]})"), "m1");
  fails_with(with_measures(R"("m1": {"support": [{"atom": "z", "weight": 0}]})"), "z");
  fails_with(with_measures(R"("m1": {"support": [{"atom": "a", "weight": "-inf"}]})"), "-inf");
  fails_with(with_measures(R"("m1": {"support": []})"), "m1");
  fails_with(with_measures(R"("p": {"support": [{"atom": "q", "weight": 0}]},
                              "q": {"support": [{"atom": "p", "weight": 0}]})"),
             "refers to itself");
  fails_with(with_measures(R"("m": {"support": [{"atom": "a", "weight": 0},
                                                {"atom": {"support": [{"atom": "b", "weight": 0}]},
                                                 "weight": -1}]})"),
             "level");
  fails_with(with_measures(R"("a": {"support": [{"atom": "b", "weight": 0}]})"), "a");
  fails_with(R"({"space": {"points": ["a", "b"], "dist": [[0, 2], [1, 0]]}, "measures": {}})",
             "dist(b, a)");
  fails_with(R"({"space": {"points": ["a", "a"], "dist": [[0, 2], [2, 0]]}, "measures": {}})",
             "a");
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_document("{\n  \"space\": {\n    \"points\": [\"a\",,]\n  }\n}");
    FAIL("parsed");
  } catch (const DocumentError& e) {
    REQUIRE(e.line());
    CHECK(*e.line() == 3);
    CHECK(e.column().has_value());
  }
}

TEST_CASE("twelve significant digits by default") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(-1.0) == "-1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(1.0 / 3.0, 0) == "0.3333333333333333");

  const Document doc = parse_document(kWorked);
  const std::string text = print_document(doc);
  CHECK(text.find("\"m1\"") != std::string::npos);
  CHECK(same_document(parse_document(text), doc));
}

TEST_CASE("round trip at full precision") {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    Document doc;
    doc.space = gen_space(3 + i % 4, rng);
    std::vector<IdempotentMeasure> inner;
    for (int k = 0; k < 3; ++k) {
      inner.push_back(gen_measure(doc.space, 3, rng));
      doc.measures.emplace_back("m" + std::to_string(k), inner.back());
    }
    const auto lifted = lift(doc.space, inner);
    doc.measures.emplace_back("outer", gen_measure(lifted, 3, rng));
    const Document back = parse_document(print_document(doc, 0));
    CHECK(same_document(back, doc));
    for (int k = 0; k < 3; ++k) {
      CHECK(back.measure("m" + std::to_string(k)) ==
            make_measure(back.space, {inner[k].entries().begin(), inner[k].entries().end()}));
    }
  }
}
