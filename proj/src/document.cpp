#include "tropmeas/document.hpp"

#include <algorithm>
#include <map>
#include <variant>

#include <fmt/format.h>
#include <json.hpp>

namespace tropmeas {
namespace {

using nlohmann::json;

struct Node {
  std::string path;
  std::size_t level = 0;
  // Atom: point index (level 1) or node id (level >= 2).
  std::vector<std::pair<std::size_t, double>> support;
  bool resolved = false;
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

class Resolver {
 public:
  Resolver(const json& measures, const FiniteMetricSpace& space)
      : measures_(measures), space_(space) {}

  std::size_t named(const std::string& name) {
    if (auto it = ids_.find(name); it != ids_.end()) {
      if (!nodes_[it->second].resolved) {
        throw DocumentError(fmt::format("measure '{}' refers to itself", name));
      }
      return it->second;
    }
    const std::size_t id = new_node(name);
    ids_[name] = id;
    fill(id, measures_.at(name));
    return id;
  }

  std::vector<Node>& nodes() { return nodes_; }

 private:
  std::size_t new_node(std::string path) {
    nodes_.push_back(Node{std::move(path), 0, {}, false});
    return nodes_.size() - 1;
  }

  void fill(std::size_t id, const json& term) {
    const std::string path = nodes_[id].path;
    if (!term.is_object() || !term.contains("support") || !term["support"].is_array()) {
      throw DocumentError(fmt::format("measure '{}': expected {{\"support\": [...]}}", path));
    }
    const json& support = term["support"];
    if (support.empty()) throw DocumentError(fmt::format("measure '{}': empty support", path));

    std::optional<std::size_t> level;
    std::vector<std::pair<std::size_t, double>> entries;
    for (std::size_t i = 0; i < support.size(); ++i) {
      const json& item = support[i];
      const std::string where = fmt::format("{}/support[{}]", path, i);
      if (!item.is_object() || !item.contains("atom") || !item.contains("weight")) {
        throw DocumentError(fmt::format("measure '{}': entry needs \"atom\" and \"weight\"", where));
      }
      const double weight = parse_weight(item["weight"], where);

      std::size_t atom = 0;
      std::size_t atom_level = 0;
      const json& a = item["atom"];
      if (a.is_string()) {
        const auto label = a.get<std::string>();
        const bool is_point = space_.find(label).has_value();
        const bool is_measure = measures_.contains(label);
        if (is_point && is_measure) {
          throw DocumentError(
              fmt::format("measure '{}': atom '{}' is both a point and a measure name", where, label));
        }
        if (is_point) {
          atom = *space_.find(label);
        } else if (is_measure) {
          atom = named(label);
          atom_level = nodes_[atom].level;
        } else {
          throw DocumentError(fmt::format("measure '{}': unknown point label '{}'", where, label));
        }
      } else if (a.is_object()) {
        atom = new_node(where);
        fill(atom, a);
        atom_level = nodes_[atom].level;
      } else {
        throw DocumentError(fmt::format("measure '{}': atom must be a string or a term", where));
      }

      if (level && *level != atom_level + 1) {
        throw DocumentError(fmt::format("measure '{}': atoms of mixed nesting levels", path));
      }
      level = atom_level + 1;
      entries.emplace_back(atom, weight);
    }
    nodes_[id].level = *level;
    nodes_[id].support = std::move(entries);
    nodes_[id].resolved = true;
  }

  static double parse_weight(const json& w, const std::string& where) {
    if (w.is_number()) return w.get<double>();
    if (w.is_string() && w.get<std::string>() == "-inf") {
      throw DocumentError(fmt::format(
          "measure '{}': weight \"-inf\" is not allowed inside a support (support weights "
          "must be finite; leave the atom out instead)",
          where));
    }
    throw DocumentError(fmt::format("measure '{}': weight must be a number", where));
  }

  const json& measures_;
  const FiniteMetricSpace& space_;
  std::vector<Node> nodes_;
  std::map<std::string, std::size_t> ids_;
};

SpacePtr parse_space(const json& root) {
  if (!root.contains("space") || !root["space"].is_object()) {
    throw DocumentError("document needs a \"space\" object");
  }
  const json& s = root["space"];
  if (!s.contains("points") || !s["points"].is_array() || !s.contains("dist") ||
      !s["dist"].is_array()) {
    throw DocumentError("space needs \"points\" and \"dist\" arrays");
  }
  std::vector<std::string> labels;
  for (const auto& p : s["points"]) {
    if (!p.is_string()) throw DocumentError("point labels must be strings");
    labels.push_back(p.get<std::string>());
  }
  std::vector<std::vector<double>> dist;
  for (const auto& row : s["dist"]) {
    if (!row.is_array()) throw DocumentError("dist must be a matrix of numbers");
    auto& r = dist.emplace_back();
    for (const auto& v : row) {
      if (!v.is_number()) throw DocumentError("dist must be a matrix of numbers");
      r.push_back(v.get<double>());
    }
  }
  try {
    return FiniteMetricSpace::create(std::move(labels), dist);
  } catch (const SpaceError& e) {
    throw DocumentError(fmt::format("invalid space: {}", e.what()));
  }
}

void print_term(std::string& out, const IdempotentMeasure& mu, int digits) {
  const auto& g = *mu.ground();
  out += "{\"support\": [";
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (i) out += ", ";
    const auto& e = mu.entry(i);
    out += "{\"atom\": ";
    if (g.level() == 0) {
      out += json(g.label(e.atom)).dump();
    } else {
      print_term(out, g.point(e.atom), digits);
    }
    out += ", \"weight\": " + format_number(e.weight, digits) + "}";
  }
  out += "]}";
}

}  // namespace

std::string format_number(double v, int significant_digits) {
  if (v == 0.0) return "0";
  if (significant_digits <= 0) return fmt::format("{}", v);
  return fmt::format("{:.{}g}", v, significant_digits);
}

const IdempotentMeasure& Document::measure(std::string_view name) const {
  for (const auto& [n, m] : measures) {
    if (n == name) return m;
  }
  throw DocumentError(fmt::format("no measure named '{}'", name));
}

Document parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw DocumentError(fmt::format("syntax error at line {}, column {}: {}", line, column,
                                    e.what()),
                        line, column);
  }
  if (!root.is_object()) throw DocumentError("document must be a JSON object");

  Document doc;
  doc.space = parse_space(root);

  const json empty = json::object();
  const json& measures = root.contains("measures") ? root["measures"] : empty;
  if (!measures.is_object()) throw DocumentError("\"measures\" must be an object");

  Resolver resolver(measures, *doc.space);
  std::vector<std::pair<std::string, std::size_t>> named;
  for (auto it = measures.begin(); it != measures.end(); ++it) {
    if (doc.space->find(it.key())) {
      throw DocumentError(fmt::format("measure name '{}' collides with a point label", it.key()));
    }
    named.emplace_back(it.key(), resolver.named(it.key()));
  }

  auto& nodes = resolver.nodes();
  std::size_t top = 0;
  for (const auto& n : nodes) top = std::max(top, n.level);

  std::vector<std::optional<IdempotentMeasure>> built(nodes.size());
  SpacePtr level_space = doc.space;
  for (std::size_t level = 1; level <= top; ++level) {
    if (level >= 2) {
      // The shared space for this level: every atom-measure used here.
      std::vector<IdempotentMeasure> atoms;
      for (const auto& n : nodes) {
        if (n.level != level) continue;
        for (const auto& [atom, w] : n.support) atoms.push_back(*built[atom]);
      }
      if (atoms.empty()) continue;
      level_space = lift(level_space, atoms);
    }
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      const Node& n = nodes[id];
      if (n.level != level) continue;
      std::vector<Entry> entries;
      for (const auto& [atom, w] : n.support) {
        entries.push_back({level == 1 ? atom : *level_space->find(*built[atom]), w});
      }
      try {
        built[id] = make_measure(level_space, std::move(entries));
      } catch (const MeasureError& e) {
        throw DocumentError(fmt::format("measure '{}': {}", n.path, e.what()));
      }
    }
  }

  for (const auto& [name, id] : named) doc.measures.emplace_back(name, *built[id]);
  std::sort(doc.measures.begin(), doc.measures.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return doc;
}

std::string print_document(const Document& doc, int significant_digits) {
  const auto& s = *doc.space;
  std::string out = "{\n  \"space\": {\n    \"points\": [";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += json(s.label(i)).dump();
  }
  out += "],\n    \"dist\": [";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += i ? ",\n      [" : "\n      [";
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j) out += ", ";
      out += format_number(s.distance(i, j), significant_digits);
    }
    out += "]";
  }
  out += "\n    ]\n  },\n  \"measures\": {";
  for (std::size_t i = 0; i < doc.measures.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    out += json(doc.measures[i].first).dump() + ": ";
    print_term(out, doc.measures[i].second, significant_digits);
  }
  out += doc.measures.empty() ? "}\n}\n" : "\n  }\n}\n";
  return out;
}

bool same_measure(const IdempotentMeasure& a, const IdempotentMeasure& b) {
  const auto& ga = *a.ground();
  const auto& gb = *b.ground();
  if (ga.level() != gb.level() || a.size() != b.size()) return false;
  // Lifted spaces may order their points differently, so match entries.
  for (const auto& ea : a.entries()) {
    const bool found = std::any_of(b.entries().begin(), b.entries().end(), [&](const Entry& eb) {
      if (ea.weight != eb.weight) return false;
      return ga.level() == 0 ? ga.label(ea.atom) == gb.label(eb.atom)
                             : same_measure(ga.point(ea.atom), gb.point(eb.atom));
    });
    if (!found) return false;
  }
  return true;
}

bool same_document(const Document& a, const Document& b) {
  const auto& sa = *a.space;
  const auto& sb = *b.space;
  if (sa.labels() != sb.labels()) return false;
  if (!std::equal(sa.distances().begin(), sa.distances().end(), sb.distances().begin(),
                  sb.distances().end())) {
    return false;
  }
  if (a.measures.size() != b.measures.size()) return false;
  for (std::size_t i = 0; i < a.measures.size(); ++i) {
    if (a.measures[i].first != b.measures[i].first) return false;
    if (!same_measure(a.measures[i].second, b.measures[i].second)) return false;
  }
  return true;
}

}  // namespace tropmeas
