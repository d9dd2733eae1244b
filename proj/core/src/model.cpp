#include "gaq/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gaq/errors.hpp"
#include "gaq/parser.hpp"

namespace gaq {

namespace {

struct Line {
  std::size_t number;
  std::size_t indent;
  std::string text;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// Keyword and the remainder of the line, with the column where the remainder starts.
struct Split {
  std::string keyword;
  std::string rest;
  std::size_t rest_column;
};

Split split_keyword(const Line& l) {
  const std::size_t sp = l.text.find_first_of(" \t");
  if (sp == std::string::npos) return {l.text, "", l.indent + l.text.size() + 1};
  std::size_t start = sp;
  while (start < l.text.size() && std::isspace(static_cast<unsigned char>(l.text[start]))) ++start;
  return {l.text.substr(0, sp), l.text.substr(start), l.indent + start + 1};
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] void fail(const Line& l, const std::string& message, std::size_t column = 0) {
  throw ParseError(l.number, column ? column : l.indent + 1, message);
}

// "lhs <sep> rhs" where both sides are non-empty.
std::pair<std::pair<std::string, std::size_t>, std::pair<std::string, std::size_t>> split_on(const Line& l,
                                                                                             const Split& s,
                                                                                             char sep) {
  const std::size_t at = s.rest.find(sep);
  if (at == std::string::npos) fail(l, std::string("expected '") + sep + "'", s.rest_column);
  std::string lhs = trim(s.rest.substr(0, at));
  std::string rhs_raw = s.rest.substr(at + 1);
  std::size_t offset = 0;
  while (offset < rhs_raw.size() && std::isspace(static_cast<unsigned char>(rhs_raw[offset]))) ++offset;
  std::string rhs = trim(rhs_raw);
  if (lhs.empty() || rhs.empty()) fail(l, std::string("empty side of '") + sep + "'", s.rest_column);
  return {{lhs, s.rest_column}, {rhs, s.rest_column + at + 1 + offset}};
}

}  // namespace

std::set<std::string> ModelConfig::coordinate_names() const {
  std::set<std::string> out;
  for (const auto& c : coordinates) out.insert(c.name);
  return out;
}

std::set<std::string> ModelConfig::base_symbols() const {
  std::set<std::string> out = coordinate_names();
  out.insert(parameters.begin(), parameters.end());
  out.insert(std::string(kFiberSymbol));
  return out;
}

GroupLaw ModelConfig::group() const { return GroupLaw(coordinates, law); }

GeneratingFunction ModelConfig::generating_function() const { return GeneratingFunction(lambda, logs); }

ModelConfig ModelConfig::with_parameters(const Point& values) const {
  for (const auto& [k, v] : values)
    if (std::find(parameters.begin(), parameters.end(), k) == parameters.end())
      throw ModelError("'" + k + "' is not a parameter of " + name);
  ModelConfig m = *this;
  auto sub = [&](RationalExpr& e) { e = e.partial_eval(values); };
  for (auto& e : m.law) sub(e);
  sub(m.lambda);
  for (auto& t : m.logs) sub(t.argument);
  if (m.cocycle) sub(*m.cocycle);
  for (auto& g : m.generators)
    for (auto& e : g) sub(e);
  for (auto& f : m.ansatz.factors) {
    sub(f.argument);
    sub(f.exponent);
  }
  sub(m.ansatz.tau);
  if (m.chart)
    for (auto& [k, v] : m.chart->bindings) sub(v);
  sub(m.weight);
  std::erase_if(m.parameters, [&](const std::string& p) { return values.count(p) > 0; });
  for (const auto& [k, v] : values) m.fixed_parameters[k] = v;
  return m;
}

ModelConfig parse_model(std::string_view text) {
  std::vector<Line> lines;
  {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string raw(text.substr(pos, end - pos));
      ++number;
      pos = end + 1;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const std::size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::size_t indent = 0;
      while (indent < raw.size() && std::isspace(static_cast<unsigned char>(raw[indent]))) ++indent;
      std::string body = trim(raw);
      if (!body.empty()) lines.push_back({number, indent, body});
      if (end == text.size()) break;
    }
  }
  if (lines.empty() || lines.front().text != kModelHeader) {
    throw ParseError(lines.empty() ? 1 : lines.front().number, 1,
                     "missing header line '" + std::string(kModelHeader) + "'");
  }

  std::map<std::string, std::vector<Line>> sections;
  std::map<std::string, std::size_t> section_line;
  std::string current;
  const std::set<std::string> known = {"", "group", "extension", "casimir", "polarization", "ansatz", "measure", "expect"};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.text.front() == '[') {
      if (l.text.back() != ']') fail(l, "unterminated section header");
      current = trim(l.text.substr(1, l.text.size() - 2));
      if (!known.count(current) || current.empty()) fail(l, "unknown section [" + current + "]");
      if (section_line.count(current)) fail(l, "duplicate section [" + current + "]");
      section_line[current] = l.number;
      sections[current];
      continue;
    }
    sections[current].push_back(l);
  }

  ModelConfig m;
  for (const auto& l : sections[""]) {
    const Split s = split_keyword(l);
    if (s.keyword == "name") {
      if (s.rest.empty()) fail(l, "name is empty");
      m.name = s.rest;
    } else if (s.keyword == "parameters") {
      for (const auto& w : words(s.rest)) {
        if (!valid_identifier(w) || w == "i") fail(l, "invalid parameter name '" + w + "'", s.rest_column);
        m.parameters.push_back(w);
      }
    } else {
      fail(l, "unknown preamble keyword '" + s.keyword + "'");
    }
  }
  if (m.name.empty()) throw ModelError("model has no name");
  if (!section_line.count("group")) throw ModelError("missing [group] section");
  if (!section_line.count("extension")) throw ModelError("missing [extension] section");

  // [group]
  const Line* law_line = nullptr;
  std::vector<std::pair<Line, Split>> law_lines;
  for (const auto& l : sections["group"]) {
    const Split s = split_keyword(l);
    if (s.keyword == "coordinate") {
      const auto w = words(s.rest);
      if (w.size() != 2) fail(l, "expected 'coordinate <name> <identity value>'", s.rest_column);
      if (!valid_identifier(w[0]) || w[0] == "i" || w[0] == "d") fail(l, "invalid coordinate name '" + w[0] + "'", s.rest_column);
      if (w[0] == kFiberSymbol) fail(l, "'phi' is reserved for the fiber coordinate", s.rest_column);
      m.coordinates.push_back({w[0], parse_scalar(w[1], {l.number, s.rest_column + w[0].size() + 1})});
    } else if (s.keyword == "labels") {
      m.labels = words(s.rest);
    } else if (s.keyword == "law") {
      law_lines.emplace_back(l, s);
      law_line = &l;
    } else if (s.keyword == "domain") {
      const auto w = words(s.rest);
      if (w.size() != 3 || (w[1] != ">" && w[1] != "<")) fail(l, "expected 'domain <coordinate> > <value>'", s.rest_column);
      m.domain.push_back({w[0], w[1] == ">", parse_scalar(w[2], {l.number, s.rest_column})});
    } else {
      fail(l, "unknown [group] keyword '" + s.keyword + "'");
    }
  }
  if (m.coordinates.empty()) throw ModelError("[group] declares no coordinates");
  {
    std::set<std::string> seen;
    for (const auto& c : m.coordinates)
      if (!seen.insert(c.name).second) throw ModelError("duplicate coordinate " + c.name);
    for (const auto& p : m.parameters)
      if (seen.count(p)) throw ModelError("parameter " + p + " clashes with a coordinate");
  }
  if (m.labels.empty()) {
    for (const auto& c : m.coordinates) m.labels.push_back(c.name);
  } else if (m.labels.size() != m.coordinates.size()) {
    throw ModelError("labels count does not match coordinate count");
  }
  if (law_lines.size() != m.coordinates.size()) {
    if (law_line) fail(*law_line, "law has " + std::to_string(law_lines.size()) + " components for " +
                                      std::to_string(m.coordinates.size()) + " coordinates");
    throw ModelError("[group] has no law");
  }
  std::set<std::string> tagged(m.parameters.begin(), m.parameters.end());
  for (const auto& c : m.coordinates) {
    tagged.insert(GroupLaw::tagged(c.name, 1));
    tagged.insert(GroupLaw::tagged(c.name, 2));
  }
  for (const auto& [l, s] : law_lines) m.law.push_back(parse_expression(s.rest, &tagged, {l.number, s.rest_column}));
  for (const auto& d : m.domain)
    if (!m.coordinate_names().count(d.coordinate)) throw ModelError("domain names unknown coordinate " + d.coordinate);

  std::set<std::string> plain = m.coordinate_names();
  plain.insert(m.parameters.begin(), m.parameters.end());

  // [extension]
  bool have_lambda = false;
  for (const auto& l : sections["extension"]) {
    const Split s = split_keyword(l);
    if (s.keyword == "lambda") {
      if (have_lambda) fail(l, "lambda given twice");
      have_lambda = true;
      m.lambda = parse_expression(s.rest, &plain, {l.number, s.rest_column});
    } else if (s.keyword == "log") {
      const auto [lhs, rhs] = split_on(l, s, ':');
      const std::set<std::string> none;
      const RationalExpr coeff = parse_expression(lhs.first, &none, {l.number, lhs.second});
      m.logs.push_back({*coeff.as_scalar(), parse_expression(rhs.first, &plain, {l.number, rhs.second})});
    } else if (s.keyword == "cocycle") {
      m.cocycle = parse_expression(s.rest, &tagged, {l.number, s.rest_column});
    } else {
      fail(l, "unknown [extension] keyword '" + s.keyword + "'");
    }
  }
  if (!have_lambda && m.logs.empty()) throw ModelError("[extension] needs a lambda line");

  const std::size_t n = m.coordinates.size();
  auto scalar_row = [&](const Line& l, const Split& s, std::size_t want) {
    const auto w = words(s.rest);
    if (w.size() != want) fail(l, "expected " + std::to_string(want) + " entries", s.rest_column);
    std::vector<Scalar> row;
    for (const auto& x : w) row.push_back(parse_scalar(x, {l.number, s.rest_column}));
    return row;
  };

  // [casimir]
  for (const auto& l : sections["casimir"]) {
    const Split s = split_keyword(l);
    if (s.keyword == "row") {
      if (!m.casimir_matrix) m.casimir_matrix.emplace();
      m.casimir_matrix->push_back(scalar_row(l, s, n));
    } else if (s.keyword == "killing") {
      m.killing_scale = parse_scalar(s.rest, {l.number, s.rest_column});
    } else {
      fail(l, "unknown [casimir] keyword '" + s.keyword + "'");
    }
  }
  if (m.casimir_matrix && m.casimir_matrix->size() != n) throw ModelError("Casimir matrix needs one row per coordinate");
  if (m.casimir_matrix && m.killing_scale) throw ModelError("give either Casimir rows or a Killing scale, not both");

  // [polarization]
  for (const auto& l : sections["polarization"]) {
    const Split s = split_keyword(l);
    if (s.keyword == "enumerate") {
      m.enumerate = true;
    } else if (s.keyword == "generator") {
      Vector g;
      for (const auto& x : scalar_row(l, s, n)) g.emplace_back(x);
      m.generators.push_back(std::move(g));
    } else if (s.keyword == "eigenvalues") {
      if (s.rest == "horizontal") {
        m.half_rho = false;
      } else if (s.rest == "half-rho") {
        m.half_rho = true;
      } else {
        fail(l, "eigenvalues must be 'horizontal' or 'half-rho'", s.rest_column);
      }
    } else {
      fail(l, "unknown [polarization] keyword '" + s.keyword + "'");
    }
  }

  // [ansatz]
  if (section_line.count("ansatz")) {
    m.has_ansatz = true;
    std::set<std::string> unknowns;
    for (const auto& l : sections["ansatz"]) {
      const Split s = split_keyword(l);
      if (s.keyword == "unknowns") {
        for (const auto& w : words(s.rest)) {
          if (!valid_identifier(w) || plain.count(w)) fail(l, "invalid unknown '" + w + "'", s.rest_column);
          m.ansatz.unknowns.push_back(w);
          unknowns.insert(w);
        }
      }
    }
    std::set<std::string> with_unknowns = plain;
    with_unknowns.insert(unknowns.begin(), unknowns.end());
    bool have_tau = false;
    for (const auto& l : sections["ansatz"]) {
      const Split s = split_keyword(l);
      if (s.keyword == "unknowns") continue;
      if (s.keyword == "exp") {
        m.ansatz.factors.push_back({AnsatzFactor::Kind::Exp, parse_expression(s.rest, &with_unknowns, {l.number, s.rest_column}),
                                    RationalExpr()});
      } else if (s.keyword == "power") {
        const auto [lhs, rhs] = split_on(l, s, ':');
        m.ansatz.factors.push_back({AnsatzFactor::Kind::Power, parse_expression(lhs.first, &plain, {l.number, lhs.second}),
                                    parse_expression(rhs.first, &with_unknowns, {l.number, rhs.second})});
      } else if (s.keyword == "tau") {
        have_tau = true;
        m.ansatz.tau = parse_expression(s.rest, &plain, {l.number, s.rest_column});
      } else if (s.keyword == "chart") {
        const auto w = words(s.rest);
        if (w.size() != 2 || !valid_identifier(w[0]) || !valid_identifier(w[1]))
          fail(l, "expected 'chart <kappa> <tau>'", s.rest_column);
        for (const auto& x : w)
          if (with_unknowns.count(x)) fail(l, "chart symbol '" + x + "' is already declared", s.rest_column);
        m.chart = Chart{w[0], w[1], {}};
      } else if (s.keyword != "map" && s.keyword != "weight") {
        fail(l, "unknown [ansatz] keyword '" + s.keyword + "'");
      }
    }
    if (!have_tau) throw ModelError("[ansatz] needs a tau line");
    std::set<std::string> chart_symbols = plain;
    if (m.chart) {
      chart_symbols.insert(m.chart->kappa);
      chart_symbols.insert(m.chart->tau);
    }
    for (const auto& l : sections["ansatz"]) {
      const Split s = split_keyword(l);
      if (s.keyword == "map") {
        if (!m.chart) fail(l, "map before chart");
        const auto [lhs, rhs] = split_on(l, s, '=');
        if (!m.coordinate_names().count(lhs.first)) fail(l, "map target '" + lhs.first + "' is not a coordinate", lhs.second);
        m.chart->bindings.emplace(lhs.first, parse_expression(rhs.first, &chart_symbols, {l.number, rhs.second}));
      } else if (s.keyword == "weight") {
        std::set<std::string> w = std::set<std::string>(m.parameters.begin(), m.parameters.end());
        if (m.chart) w.insert(m.chart->tau);
        m.weight = parse_expression(s.rest, &w, {l.number, s.rest_column});
      }
    }
  }

  // [measure]
  for (const auto& l : sections["measure"]) {
    const Split s = split_keyword(l);
    if (s.keyword == "rho") {
      if (s.rest != "monomial") fail(l, "only 'rho monomial' is supported", s.rest_column);
      m.rho_monomial = true;
    } else if (s.keyword == "samples") {
      const Scalar v = parse_scalar(s.rest, {l.number, s.rest_column});
      if (!v.is_integer() || v.re() < 1 || v.re() > 1000) fail(l, "samples must be an integer in 1..1000", s.rest_column);
      m.samples = v.re().get_num().get_ui();
    } else {
      fail(l, "unknown [measure] keyword '" + s.keyword + "'");
    }
  }

  // [expect]
  for (const auto& l : sections["expect"]) {
    const std::size_t eq = l.text.find('=');
    if (eq == std::string::npos) fail(l, "expected '<key> = <value>'");
    const std::string key = trim(l.text.substr(0, eq));
    if (key.empty()) fail(l, "empty expectation key");
    if (m.expect.count(key)) fail(l, "duplicate expectation '" + key + "'");
    m.expect[key] = {trim(l.text.substr(eq + 1)), l.number};
  }
  return m;
}

}  // namespace gaq
