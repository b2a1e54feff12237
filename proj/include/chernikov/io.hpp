#pragma once

// Text documents for pairs and tuples, and JSON forms of the reports.

#include <cstdlib>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chernikov/group.hpp"
#include "chernikov/pencil.hpp"
#include "chernikov/weakeq.hpp"

namespace chernikov {

using nlohmann::json;

/// Environment variable naming the field used when a document has no `field` line.
inline constexpr const char* kFieldEnvVar = "CHERNIKOV_FIELD";

inline FieldSpec default_field_spec() {
  if (const char* env = std::getenv(kFieldEnvVar); env && *env) return FieldSpec::parse(env);
  return FieldSpec{};
}

/// Parse failure with a 1-based location.
class parse_error : public usage_error {
 public:
  parse_error(std::size_t line, std::size_t col, const std::string& what)
      : usage_error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  std::size_t line_, col_;
};

/// field <spec> / dim <n> / one or more `matrix <name>` sections of n rows of hex entries.
/// Blank lines and text after '#' are ignored.
struct PairDocument {
  FieldSpec field;
  std::size_t dim = 0;
  std::vector<std::string> names;
  std::vector<Mat> matrices;

  const Field& get_field() const { return Field::get(field); }

  AlternatingPair pair() const {
    if (matrices.size() != 2)
      throw usage_error("expected a pair (2 matrices), document has " + std::to_string(matrices.size()));
    return {matrices[0], matrices[1]};
  }

  static PairDocument of(const AlternatingPair& p) {
    return {p.field().spec(), p.dim(), {"A", "B"}, {p.a, p.b}};
  }
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t col;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

}  // namespace detail

/// Parses a document; validation of alternation is left to `validate`.
inline PairDocument parse_pair_document(std::string_view text, std::optional<FieldSpec> fallback = std::nullopt) {
  PairDocument doc;
  std::optional<FieldSpec> spec;
  std::optional<std::size_t> dim;
  const Field* fld = nullptr;
  std::size_t row = 0;  // rows read into the current matrix
  std::size_t lineno = 0, last_line = 0;

  auto need_header = [&](std::size_t col) {
    if (!spec) spec = fallback ? *fallback : default_field_spec();
    if (!dim) throw parse_error(lineno, col, "missing 'dim' before matrix data");
    fld = &Field::get(*spec);
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    const auto toks = detail::tokenize(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    last_line = lineno;
    const std::string_view head = toks[0].text;
    if (head == "field") {
      if (!doc.matrices.empty()) throw parse_error(lineno, toks[0].col, "'field' after matrix data");
      if (toks.size() != 2) throw parse_error(lineno, toks[0].col, "expected 'field <spec>'");
      try {
        spec = FieldSpec::parse(toks[1].text);
      } catch (const usage_error& e) {
        throw parse_error(lineno, toks[1].col, e.what());
      }
    } else if (head == "dim") {
      if (!doc.matrices.empty()) throw parse_error(lineno, toks[0].col, "'dim' after matrix data");
      if (toks.size() != 2 || toks[1].text.find_first_not_of("0123456789") != std::string_view::npos)
        throw parse_error(lineno, toks[0].col, "expected 'dim <n>'");
      dim = std::stoul(std::string(toks[1].text));
    } else if (head == "matrix") {
      if (toks.size() != 2) throw parse_error(lineno, toks[0].col, "expected 'matrix <name>'");
      need_header(toks[0].col);
      if (!doc.matrices.empty() && row != *dim)
        throw parse_error(lineno, toks[0].col,
                          "matrix " + doc.names.back() + " has " + std::to_string(row) + " rows, expected " +
                              std::to_string(*dim));
      doc.names.emplace_back(toks[1].text);
      doc.matrices.emplace_back(*fld, *dim, *dim);
      row = 0;
    } else {
      if (doc.matrices.empty()) throw parse_error(lineno, toks[0].col, "unexpected '" + std::string(head) + "'");
      if (row == *dim) throw parse_error(lineno, toks[0].col, "too many rows in matrix " + doc.names.back());
      if (toks.size() != *dim)
        throw parse_error(lineno, toks.size() > *dim ? toks[*dim].col : line.size() + 1,
                          "expected " + std::to_string(*dim) + " entries, found " + std::to_string(toks.size()));
      for (std::size_t c = 0; c < toks.size(); ++c) {
        try {
          doc.matrices.back()(row, c) = fld->parse(toks[c].text);
        } catch (const usage_error& e) {
          throw parse_error(lineno, toks[c].col, e.what());
        }
      }
      ++row;
    }
    if (end == text.size()) break;
  }
  if (doc.matrices.empty()) throw parse_error(last_line + 1, 1, "no matrices in document");
  if (row != *dim)
    throw parse_error(last_line, 1,
                      "matrix " + doc.names.back() + " has " + std::to_string(row) + " rows, expected " +
                          std::to_string(*dim));
  doc.field = *spec;
  doc.dim = *dim;
  return doc;
}

inline PairDocument read_pair_document(std::istream& in, std::optional<FieldSpec> fallback = std::nullopt) {
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_pair_document(ss.str(), fallback);
}

inline std::string to_string(const PairDocument& doc) {
  const Field& f = doc.get_field();
  std::string out = "field " + doc.field.to_string() + "\ndim " + std::to_string(doc.dim) + "\n";
  for (std::size_t k = 0; k < doc.matrices.size(); ++k) {
    out += "matrix " + doc.names[k] + "\n";
    for (std::size_t i = 0; i < doc.dim; ++i) {
      for (std::size_t j = 0; j < doc.dim; ++j) out += (j ? " " : "") + f.format(doc.matrices[k](i, j));
      out += "\n";
    }
  }
  return out;
}

inline std::string to_string(const AlternatingPair& p) { return to_string(PairDocument::of(p)); }

// ---------------------------------------------------------------------------
// JSON

inline json to_json(const ClassFunction& rho) {
  json blocks = json::array();
  for (auto& [key, mult] : rho.entries())
    blocks.push_back({{"g", to_string(key.first)}, {"n", key.second}, {"mult", mult}});
  return {{"field", rho.field().spec().to_string()}, {"dim", rho.total_dimension()}, {"blocks", blocks}};
}

inline ClassFunction class_function_from_json(const json& j) {
  try {
    const Field& f = Field::get(FieldSpec::parse(j.at("field").get<std::string>()));
    ClassFunction rho(f);
    for (const json& b : j.at("blocks"))
      rho.add(parse_point(b.at("g").get<std::string>(), f), b.at("n").get<unsigned>(), b.value("mult", 1u));
    return rho;
  } catch (const json::exception& e) {
    throw usage_error(std::string("bad class function JSON: ") + e.what());
  }
}

inline json to_json(const GL2Element& q) {
  const Field& f = *q.field;
  return {{"field", f.spec().to_string()},
          {"Q", json::array({json::array({f.format(q.q11), f.format(q.q12)}), json::array({f.format(q.q21), f.format(q.q22)})})}};
}

inline GL2Element gl2_from_json(const json& j) {
  try {
    const Field& f = Field::get(FieldSpec::parse(j.at("field").get<std::string>()));
    const json& q = j.at("Q");
    auto at = [&](int r, int c) { return f.parse(q.at(r).at(c).get<std::string>()); };
    GL2Element g{&f, at(0, 0), at(0, 1), at(1, 0), at(1, 1)};
    if (!g.invertible()) throw usage_error("witness Q is singular");
    return g;
  } catch (const json::exception& e) {
    throw usage_error(std::string("bad witness JSON: ") + e.what());
  }
}

inline json to_json(const WeakEquivalence& w) {
  json out = {{"equivalent", w.equivalent}};
  out["witness"] = w.witness ? to_json(*w.witness) : json(nullptr);
  return out;
}

inline WeakEquivalence weak_equivalence_from_json(const json& j) {
  try {
    WeakEquivalence w{j.at("equivalent").get<bool>(), std::nullopt};
    if (!j.at("witness").is_null()) w.witness = gl2_from_json(j.at("witness"));
    return w;
  } catch (const json::exception& e) {
    throw usage_error(std::string("bad equivalence JSON: ") + e.what());
  }
}

inline json to_json(const PairDocument& doc) {
  const Field& f = doc.get_field();
  json mats = json::array();
  for (std::size_t k = 0; k < doc.matrices.size(); ++k) {
    json rows = json::array();
    for (std::size_t i = 0; i < doc.dim; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < doc.dim; ++j) row.push_back(f.format(doc.matrices[k](i, j)));
      rows.push_back(row);
    }
    mats.push_back({{"name", doc.names[k]}, {"rows", rows}});
  }
  return {{"field", doc.field.to_string()}, {"dim", doc.dim}, {"matrices", mats}};
}

inline PairDocument pair_document_from_json(const json& j) {
  try {
    PairDocument doc;
    doc.field = FieldSpec::parse(j.at("field").get<std::string>());
    doc.dim = j.at("dim").get<std::size_t>();
    const Field& f = doc.get_field();
    for (const json& m : j.at("matrices")) {
      doc.names.push_back(m.at("name").get<std::string>());
      Mat& mat = doc.matrices.emplace_back(f, doc.dim, doc.dim);
      const json& rows = m.at("rows");
      if (rows.size() != doc.dim) throw usage_error("matrix " + doc.names.back() + " has the wrong number of rows");
      for (std::size_t i = 0; i < doc.dim; ++i) {
        if (rows.at(i).size() != doc.dim) throw usage_error("matrix " + doc.names.back() + " has a short row");
        for (std::size_t c = 0; c < doc.dim; ++c) mat(i, c) = f.parse(rows.at(i).at(c).get<std::string>());
      }
    }
    return doc;
  } catch (const json::exception& e) {
    throw usage_error(std::string("bad pair JSON: ") + e.what());
  }
}

inline json to_json(const BinaryForm& g) {
  return {{"field", g.field().spec().to_string()}, {"degree", g.degree()}, {"form", to_string(g)}};
}

/// The degree is carried separately because the zero form prints as "0" at any degree.
inline BinaryForm binary_form_from_json(const json& j) {
  try {
    const Field& f = Field::get(FieldSpec::parse(j.at("field").get<std::string>()));
    const auto degree = j.at("degree").get<unsigned>();
    const std::string text = j.at("form").get<std::string>();
    if (text == "0") return BinaryForm(f, degree);
    BinaryForm g = parse_form(text, f);
    if (g.degree() != degree) throw usage_error("form degree does not match 'degree'");
    return g;
  } catch (const json::exception& e) {
    throw usage_error(std::string("bad form JSON: ") + e.what());
  }
}

inline json to_json(const Violation& v) {
  return {{"matrix", std::string(1, v.matrix)}, {"row", v.row + 1}, {"col", v.col + 1}, {"message", v.message()}};
}

inline json to_json(const CanonicalRep& c) { return {{"class", to_json(c.rho)}, {"witness", to_json(c.witness)}}; }

inline CanonicalRep canonical_rep_from_json(const json& j) {
  try {
    return {class_function_from_json(j.at("class")), gl2_from_json(j.at("witness"))};
  } catch (const json::exception& e) {
    throw usage_error(std::string("bad canonical JSON: ") + e.what());
  }
}

inline json to_json(const GroupPresentation& p) {
  json gens = json::array();
  for (unsigned i = 0; i < p.num_h(); ++i) gens.push_back("h" + std::to_string(i + 1));
  for (unsigned k = 0; k < p.m(); ++k) gens.push_back("a" + std::to_string(k + 1));
  json comm = json::array();
  for (unsigned i = 0; i < p.num_h(); ++i)
    for (unsigned j = i + 1; j < p.num_h(); ++j)
      if (const std::uint32_t v = p.commutator(i, j)) {
        json bits = json::array();
        for (unsigned k = 0; k < p.m(); ++k) bits.push_back((v >> k) & 1u);
        comm.push_back({{"i", i + 1}, {"j", j + 1}, {"value", bits}});
      }
  return {{"num_h", p.num_h()}, {"m", p.m()}, {"generators", gens}, {"relators", relators(p)}, {"commutators", comm}};
}

/// Rebuilds the presentation from num_h, m and the commutator table; relators are derived data.
inline GroupPresentation presentation_from_json(const json& j) {
  try {
    GroupPresentation p(j.at("num_h").get<unsigned>(), j.at("m").get<unsigned>());
    for (const json& c : j.at("commutators")) {
      const auto i = c.at("i").get<unsigned>(), jj = c.at("j").get<unsigned>();
      const json& bits = c.at("value");
      if (i == 0 || jj == 0 || i > p.num_h() || jj > p.num_h() || bits.size() != p.m())
        throw usage_error("commutator entry out of range");
      std::uint32_t v = 0;
      for (unsigned k = 0; k < p.m(); ++k)
        if (bits.at(k).get<unsigned>()) v |= 1u << k;
      p.set_commutator(i - 1, jj - 1, v);
    }
    return p;
  } catch (const json::exception& e) {
    throw usage_error(std::string("bad presentation JSON: ") + e.what());
  }
}

}  // namespace chernikov
