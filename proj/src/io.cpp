#include "dematel/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

namespace dematel::io {

namespace {

using nlohmann::json;

struct Line {
  std::size_t number = 0;  // 1-based
  std::string_view text;
};

// Splits on LF; a trailing CR (CRLF input) is dropped. Wholly empty lines are
// kept out of the stream so trailing newlines do not read as records.
std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back({number, line});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  for (;;) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

int parse_int_field(std::string_view field, std::size_t line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "\"" + std::string(field) + "\" is not an integer");
  }
  return value;
}

double parse_double_field(std::string_view field, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "\"" + std::string(field) + "\" is not a number");
  }
  return value;
}

// Shortest decimal form that parses back to the same double.
std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

// Fixed-point rendering at `places` decimals, rounding half away from zero,
// with trailing zeros (and a bare trailing point) trimmed.
std::string format_fixed_trimmed(double value, int places) {
  unsigned long long unit = 1;
  for (int k = 0; k < places; ++k) unit *= 10;
  long long scaled = std::llround(value * static_cast<double>(unit));
  bool negative = scaled < 0;
  unsigned long long mag = negative ? 0ULL - static_cast<unsigned long long>(scaled)
                                    : static_cast<unsigned long long>(scaled);
  std::string frac = std::to_string(mag % unit);
  frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = negative ? "-" : "";
  out += std::to_string(mag / unit);
  if (!frac.empty()) out += "." + frac;
  return out;
}

std::size_t require_code(const CriteriaSet& cs, std::string_view code, std::size_t line) {
  if (auto idx = cs.index_of(std::string(code))) return *idx;
  throw UnknownCodeError(line, std::string(code));
}

json matrix_to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

DenseMatrix matrix_from_json(const json& rows) {
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = n_rows == 0 ? 0 : rows.at(0).size();
  DenseMatrix m(n_rows, n_cols);
  for (std::size_t i = 0; i < n_rows; ++i) {
    const json& row = rows.at(i);
    if (row.size() != n_cols) {
      throw ParseError(0, "matrix row " + std::to_string(i) + " has ragged width");
    }
    for (std::size_t j = 0; j < n_cols; ++j) m(i, j) = row.at(j).get<double>();
  }
  return m;
}

Group group_from_string(const std::string& text) {
  if (text == "cause") return Group::Cause;
  if (text == "effect") return Group::Effect;
  throw ParseError(0, "unknown group \"" + text + "\"");
}

Strength strength_from_string(const std::string& text) {
  if (text == "strong") return Strength::Strong;
  if (text == "moderate") return Strength::Moderate;
  if (text == "weak") return Strength::Weak;
  throw ParseError(0, "unknown strength \"" + text + "\"");
}

std::string escape_dot(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

CriteriaSet parse_criteria_manifest(std::string_view text) {
  std::vector<Criterion> criteria;
  for (const Line& line : split_lines(text)) {
    std::size_t comma = line.text.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError(line.number, "expected \"code,name\"");
    }
    std::string code(line.text.substr(0, comma));
    std::string name(line.text.substr(comma + 1));
    if (code.empty()) throw ParseError(line.number, "criterion code is empty");
    criteria.push_back({std::move(code), std::move(name)});
  }
  if (criteria.size() < 2) {
    throw ParseError(criteria.size() + 1, "at least two criteria are required");
  }
  return CriteriaSet(std::move(criteria));
}

std::string write_criteria_manifest(const CriteriaSet& cs) {
  std::string out;
  for (const auto& c : cs.criteria()) {
    out += c.code;
    out += ',';
    out += c.name;
    out += '\n';
  }
  return out;
}

std::vector<ExpertResponse> parse_survey_csv(std::string_view text, const CriteriaSet& cs) {
  const std::vector<Line> lines = split_lines(text);
  if (lines.empty() || lines[0].text != "expert_id,from,to,score") {
    throw ParseError(lines.empty() ? 1 : lines[0].number,
                     "expected header \"expert_id,from,to,score\"");
  }
  const std::size_t n = cs.size();

  // Experts keep their order of first appearance, with a per-cell seen mask
  // so any repeated or absent cell is caught regardless of its score.
  std::vector<std::string> expert_order;
  std::vector<std::vector<int>> grids;
  std::vector<std::vector<bool>> seen;
  std::unordered_map<std::string, std::size_t> expert_index;

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    auto fields = split_fields(line.text);
    if (fields.size() != 4) {
      throw ParseError(line.number, "expected 4 fields \"expert_id,from,to,score\"");
    }
    std::string expert(fields[0]);
    if (expert.empty()) throw ParseError(line.number, "expert_id is empty");
    std::size_t from = require_code(cs, fields[1], line.number);
    std::size_t to = require_code(cs, fields[2], line.number);
    if (from == to) {
      throw ParseError(line.number, "diagonal cell " + std::string(fields[1]) +
                                        " -> " + std::string(fields[2]) +
                                        " must not appear (it is implicitly 0)");
    }
    int score = parse_int_field(fields[3], line.number);
    if (score < kMinScore || score > kMaxScore) {
      throw OutOfScaleError(expert, from, to, score);
    }

    auto [it, inserted] = expert_index.try_emplace(expert, grids.size());
    if (inserted) {
      expert_order.push_back(expert);
      grids.emplace_back(n * n, 0);
      seen.emplace_back(n * n, false);
    }
    std::vector<bool>::reference was_seen = seen[it->second][from * n + to];
    if (was_seen) {
      throw DuplicateCellError(line.number, expert, cs.at(from).code, cs.at(to).code);
    }
    was_seen = true;
    grids[it->second][from * n + to] = score;
  }

  std::vector<ExpertResponse> responses;
  responses.reserve(grids.size());
  for (std::size_t e = 0; e < grids.size(); ++e) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && !seen[e][i * n + j]) {
          throw MissingCellError(expert_order[e], cs.at(i).code, cs.at(j).code);
        }
      }
    }
    responses.push_back(
        validate_expert_response(ExpertResponse(expert_order[e], n, std::move(grids[e])), cs));
  }
  return responses;
}

std::string write_survey_csv(std::span<const ExpertResponse> responses, const CriteriaSet& cs) {
  std::string out = "expert_id,from,to,score\n";
  for (const auto& resp : responses) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = 0; j < cs.size(); ++j) {
        if (i == j) continue;
        out += resp.expert_id();
        out += ',';
        out += cs.at(i).code;
        out += ',';
        out += cs.at(j).code;
        out += ',';
        out += std::to_string(resp.score(i, j));
        out += '\n';
      }
    }
  }
  return out;
}

DirectRelationMatrix parse_drm_csv(std::string_view text, const CriteriaSet& cs) {
  const std::vector<Line> lines = split_lines(text);
  const std::size_t n = cs.size();
  if (lines.empty()) throw ParseError(1, "empty matrix file");

  auto header = split_fields(lines[0].text);
  if (header.size() != n + 1 || !header[0].empty()) {
    throw ParseError(lines[0].number,
                     "expected an empty corner cell and " + std::to_string(n) + " code columns");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (header[j + 1] != cs.at(j).code) {
      throw ParseError(lines[0].number, "column header \"" + std::string(header[j + 1]) +
                                            "\" does not match criterion \"" + cs.at(j).code +
                                            "\" (order must follow the manifest)");
    }
  }
  if (lines.size() != n + 1) {
    throw ParseError(lines.back().number, "expected " + std::to_string(n) + " data rows, got " +
                                              std::to_string(lines.size() - 1));
  }

  DenseMatrix values(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Line& line = lines[i + 1];
    auto fields = split_fields(line.text);
    if (fields.size() != n + 1) {
      throw ParseError(line.number, "expected a row code and " + std::to_string(n) + " values");
    }
    if (fields[0] != cs.at(i).code) {
      throw ParseError(line.number, "row header \"" + std::string(fields[0]) +
                                        "\" does not match criterion \"" + cs.at(i).code +
                                        "\" (order must follow the manifest)");
    }
    for (std::size_t j = 0; j < n; ++j) {
      values(i, j) = parse_double_field(fields[j + 1], line.number);
    }
  }
  return DirectRelationMatrix(std::move(values));
}

std::string write_drm_csv(const DirectRelationMatrix& drm, const CriteriaSet& cs) {
  std::string out;
  for (const auto& c : cs.criteria()) {
    out += ',';
    out += c.code;
  }
  out += '\n';
  for (std::size_t i = 0; i < cs.size(); ++i) {
    out += cs.at(i).code;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      out += ',';
      out += format_double(drm.values()(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string write_report_json(const AnalysisResult& result, const CriteriaSet& cs) {
  json doc;
  json criteria = json::array();
  for (const auto& c : cs.criteria()) criteria.push_back({{"code", c.code}, {"name", c.name}});
  doc["criteria"] = std::move(criteria);
  doc["s"] = result.nrm.s();
  doc["alpha"] = result.alpha;
  doc["cut_threshold"] = result.cut_threshold;
  doc["matrices"] = {{"direct_relation", matrix_to_json(result.drm.values())},
                     {"normalized", matrix_to_json(result.nrm.values())},
                     {"total_relation", matrix_to_json(result.trm.values())},
                     {"alpha_cut", matrix_to_json(result.alpha_cut)}};

  json records = json::array();
  for (const auto& rec : result.records) {
    records.push_back({{"code", rec.criterion.code},
                       {"d", rec.d},
                       {"r", rec.r},
                       {"prominence", rec.prominence},
                       {"relation", rec.relation},
                       {"group", to_string(rec.group)},
                       {"display",
                        {{"d", display_4dp(rec.d)},
                         {"r", display_4dp(rec.r)},
                         {"prominence", display_4dp(rec.prominence)},
                         {"relation", display_4dp(rec.relation)}}}});
  }
  doc["records"] = std::move(records);

  json edges = json::array();
  for (const auto& e : result.edges) {
    edges.push_back({{"from", e.from.code},
                     {"to", e.to.code},
                     {"weight", e.weight},
                     {"display", {{"weight", display_4dp(e.weight)}}},
                     {"strength", to_string(e.strength)}});
  }
  doc["edges"] = std::move(edges);

  return doc.dump(2) + "\n";
}

ReportDocument parse_report_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(0, e.what());
  }
  try {
    std::vector<Criterion> criteria;
    for (const auto& c : doc.at("criteria")) {
      criteria.push_back({c.at("code").get<std::string>(), c.at("name").get<std::string>()});
    }
    CriteriaSet cs(std::move(criteria));

    auto criterion_by_code = [&cs](const std::string& code) -> const Criterion& {
      auto idx = cs.index_of(code);
      if (!idx) throw UnknownCodeError(0, code);
      return cs.at(*idx);
    };

    const json& matrices = doc.at("matrices");
    DirectRelationMatrix drm(matrix_from_json(matrices.at("direct_relation")));
    NormalizedMatrix nrm(matrix_from_json(matrices.at("normalized")), doc.at("s").get<double>());
    TotalRelationMatrix trm(matrix_from_json(matrices.at("total_relation")));
    DenseMatrix alpha_cut = matrix_from_json(matrices.at("alpha_cut"));

    std::vector<ProminenceRecord> records;
    for (const auto& r : doc.at("records")) {
      ProminenceRecord rec;
      rec.criterion = criterion_by_code(r.at("code").get<std::string>());
      rec.d = r.at("d").get<double>();
      rec.r = r.at("r").get<double>();
      rec.prominence = r.at("prominence").get<double>();
      rec.relation = r.at("relation").get<double>();
      rec.group = group_from_string(r.at("group").get<std::string>());
      records.push_back(std::move(rec));
    }

    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      Edge edge;
      edge.from = criterion_by_code(e.at("from").get<std::string>());
      edge.to = criterion_by_code(e.at("to").get<std::string>());
      edge.weight = e.at("weight").get<double>();
      edge.strength = strength_from_string(e.at("strength").get<std::string>());
      edges.push_back(std::move(edge));
    }

    AnalysisResult result{std::move(drm),
                          std::move(nrm),
                          std::move(trm),
                          doc.at("alpha").get<double>(),
                          doc.at("cut_threshold").get<double>(),
                          std::move(alpha_cut),
                          std::move(records),
                          std::move(edges)};
    return ReportDocument{std::move(cs), std::move(result)};
  } catch (const json::exception& e) {
    throw ParseError(0, e.what());
  }
}

std::string write_dot(std::span<const Edge> edges, const CriteriaSet& cs,
                      std::span<const ProminenceRecord> records) {
  std::unordered_map<std::string, Group> groups;
  for (const auto& rec : records) groups.emplace(rec.criterion.code, rec.group);

  std::string out = "digraph influence {\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=box, style=rounded];\n";
  for (const auto& c : cs.criteria()) {
    auto it = groups.find(c.code);
    const char* fontcolor = it != groups.end() && it->second == Group::Effect ? "blue" : "red";
    out += "  \"" + escape_dot(c.code) + "\" [label=\"" + escape_dot(c.code + ": " + c.name) +
           "\", fontcolor=" + fontcolor + "];\n";
  }
  for (const auto& e : edges) {
    const char* style = nullptr;
    const char* color = nullptr;
    switch (e.strength) {
      case Strength::Strong:
        style = "solid";
        color = "red";
        break;
      case Strength::Moderate:
        style = "dashed";
        color = "red";
        break;
      default:
        style = "dotted";
        color = "black";
        break;
    }
    out += "  \"" + escape_dot(e.from.code) + "\" -> \"" + escape_dot(e.to.code) +
           "\" [label=\"" + display_4dp(e.weight) + "\", style=" + style + ", color=" + color +
           "];\n";
  }
  out += "}\n";
  return out;
}

std::string write_scatter_csv(std::span<const ProminenceRecord> records) {
  std::string out = "code,prominence,relation,group\n";
  for (const auto& rec : records) {
    out += rec.criterion.code;
    out += ',';
    out += format_fixed_trimmed(rec.prominence, 5);
    out += ',';
    out += format_fixed_trimmed(rec.relation, 7);
    out += ',';
    out += to_string(rec.group);
    out += '\n';
  }
  return out;
}

std::string write_stability_csv(const StabilityReport& report) {
  std::string out = "code,cause_probability\n";
  for (std::size_t i = 0; i < report.codes.size(); ++i) {
    out += report.codes[i];
    out += ',';
    out += format_double(report.cause_probability[i]);
    out += '\n';
  }
  return out;
}

std::string display_4dp(double value) {
  long long scaled = std::llround(value * 10000.0);
  bool negative = scaled < 0;
  unsigned long long mag = negative ? 0ULL - static_cast<unsigned long long>(scaled)
                                    : static_cast<unsigned long long>(scaled);
  std::string frac = std::to_string(mag % 10000ULL);
  frac.insert(0, 4 - frac.size(), '0');
  std::string out = negative ? "-" : "";
  out += std::to_string(mag / 10000ULL);
  out += '.';
  out += frac;
  return out;
}

}  // namespace dematel::io
