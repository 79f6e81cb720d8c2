#pragma once

// JSON document format shared by every nesting level:
//
//   {"space":    {"points": ["a", "b"], "dist": [[0, 2], [2, 0]]},
//    "measures": {"m1": {"support": [{"atom": "a", "weight": 0},
//                                    {"atom": "b", "weight": -1}]},
//                 "M":  {"support": [{"atom": "m1", "weight": 0},
//                                    {"atom": {"support": [...]}, "weight": -2}]}}}
//
// A string atom is a point label or the name of another measure; an object
// atom is an inline measure term. All measures of one level share a single
// lifted space built from every atom used one level up.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tropmeas/error.hpp"
#include "tropmeas/measure.hpp"

namespace tropmeas {

class DocumentError : public Error {
 public:
  explicit DocumentError(const std::string& what, std::optional<std::size_t> line = {},
                         std::optional<std::size_t> column = {})
      : Error(what), line_(line), column_(column) {}

  std::optional<std::size_t> line() const { return line_; }
  std::optional<std::size_t> column() const { return column_; }

 private:
  std::optional<std::size_t> line_;
  std::optional<std::size_t> column_;
};

struct Document {
  SpacePtr space;
  /// Sorted by name.
  std::vector<std::pair<std::string, IdempotentMeasure>> measures;

  const IdempotentMeasure& measure(std::string_view name) const;
};

Document parse_document(std::string_view text);

/// `significant_digits` == 0 prints the shortest round-trip representation.
std::string print_document(const Document& doc, int significant_digits = 12);

/// Same level, same labels and distances underneath, equal weights.
bool same_measure(const IdempotentMeasure& a, const IdempotentMeasure& b);
bool same_document(const Document& a, const Document& b);

/// Number formatting used by documents and reports.
std::string format_number(double v, int significant_digits = 12);

}  // namespace tropmeas
