#include "gaq/report.hpp"

#include <algorithm>
#include <functional>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "gaq/errors.hpp"
#include "gaq/parser.hpp"
#include "gaq/polarization.hpp"

namespace gaq {

namespace {

using Json = nlohmann::ordered_json;

const std::pair<Status, const char*> kStatusNames[] = {
    {Status::Pass, "pass"}, {Status::Fail, "fail"}, {Status::NotApplicable, "not-applicable"}};

const std::pair<EntryKind, const char*> kKindNames[] = {
    {EntryKind::Expr, "expr"},     {EntryKind::Exprs, "exprs"}, {EntryKind::Form, "form"},
    {EntryKind::Forms, "forms"},   {EntryKind::Fields, "fields"}, {EntryKind::Span, "span"},
    {EntryKind::Spans, "spans"},   {EntryKind::Text, "text"}};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\n") - b + 1);
}

// Split on `sep` outside (), {} and [].
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == '{' || ch == '[') ++depth;
    if (ch == ')' || ch == '}' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

Bindings as_bindings(const Point& p) {
  Bindings b;
  for (const auto& [k, v] : p) b.emplace(k, RationalExpr(v));
  return b;
}

std::string fields_as_expression(const std::string& s) {
  static const std::regex partial(R"(D\[([A-Za-z_][A-Za-z0-9_]*)\])");
  return std::regex_replace(s, partial, "D__$1");
}

std::vector<Vector> parse_span(const std::string& text) {
  const std::string t = trim(text);
  if (t.rfind("span{", 0) != 0 || t.back() != '}') throw ParseError(1, 1, "expected span{...}");
  std::vector<Vector> out;
  for (const auto& v : split_top(t.substr(5, t.size() - 6), ',')) {
    if (v.size() < 2 || v.front() != '(' || v.back() != ')') throw ParseError(1, 1, "expected (..) vector");
    Vector vec;
    for (const auto& c : split_top(v.substr(1, v.size() - 2), ',')) vec.push_back(parse_expression(c));
    out.push_back(std::move(vec));
  }
  return out;
}

bool equal_lists(const std::string& a, const std::string& b,
                 const std::function<bool(const std::string&, const std::string&)>& eq) {
  const auto xs = split_top(a, ',');
  const auto ys = split_top(b, ',');
  if (xs.size() != ys.size()) return false;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!eq(xs[i], ys[i])) return false;
  return true;
}

Json scalar_json(const Scalar& s) {
  return Json{{"re", rational_string(s.re())}, {"im", rational_string(s.im())}};
}

Rational rational_from(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error("malformed rational '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace

std::string to_string(Status s) {
  for (const auto& [k, n] : kStatusNames)
    if (k == s) return n;
  return "fail";
}

Status status_from_string(const std::string& s) {
  for (const auto& [k, n] : kStatusNames)
    if (s == n) return k;
  throw Error("unknown status '" + s + "'");
}

std::string to_string(EntryKind k) {
  for (const auto& [e, n] : kKindNames)
    if (e == k) return n;
  return "text";
}

EntryKind kind_from_string(const std::string& s) {
  for (const auto& [e, n] : kKindNames)
    if (s == n) return e;
  throw Error("unknown entry kind '" + s + "'");
}

std::size_t Report::count(Status s) const {
  std::size_t n = 0;
  for (const auto& sec : sections)
    for (const auto& e : sec.entries) n += e.status == s;
  return n;
}

const ReportEntry* Report::find(const std::string& id) const {
  for (const auto& sec : sections)
    for (const auto& e : sec.entries)
      if (e.id == id) return &e;
  return nullptr;
}

ReportEntry* Report::find(const std::string& id) {
  return const_cast<ReportEntry*>(static_cast<const Report*>(this)->find(id));
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "gaq report: " << r.model << " [" << r.stage << "]\n";
  out << "summary: " << r.count(Status::Pass) << " pass, " << r.count(Status::Fail) << " fail, "
      << r.count(Status::NotApplicable) << " not-applicable\n";
  for (const auto& sec : r.sections) {
    out << "\n== " << sec.name << " ==\n";
    for (const auto& e : sec.entries) {
      out << "[" << to_string(e.status) << "] " << e.id << "  " << e.title;
      if (!e.value.empty()) out << " = " << e.value;
      out << "\n";
      if (e.expected) out << "    expected: " << *e.expected << "\n";
      if (!e.detail.empty()) out << "    " << e.detail << "\n";
    }
  }
  if (!r.notes.empty()) {
    out << "\nnotes:\n";
    for (const auto& n : r.notes) out << "  - " << n << "\n";
  }
  return out.str();
}

std::string render_json(const Report& r) {
  Json doc;
  doc["schema"] = std::string(kReportSchema);
  doc["model"] = r.model;
  doc["stage"] = r.stage;
  doc["summary"] = Json{{"pass", r.count(Status::Pass)},
                        {"fail", r.count(Status::Fail)},
                        {"not-applicable", r.count(Status::NotApplicable)},
                        {"verdict", r.passed() ? "pass" : "fail"}};
  doc["notes"] = r.notes;
  doc["sections"] = Json::array();
  for (const auto& sec : r.sections) {
    Json s{{"name", sec.name}, {"entries", Json::array()}};
    for (const auto& e : sec.entries) {
      Json j{{"id", e.id}, {"title", e.title}, {"kind", to_string(e.kind)}, {"value", e.value},
             {"status", to_string(e.status)}};
      if (!e.scalars.empty()) {
        j["scalars"] = Json::array();
        for (const auto& x : e.scalars) j["scalars"].push_back(scalar_json(x));
      }
      if (e.expected) j["expected"] = *e.expected;
      if (!e.detail.empty()) j["detail"] = e.detail;
      s["entries"].push_back(std::move(j));
    }
    doc["sections"].push_back(std::move(s));
  }
  return doc.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed report JSON: ") + e.what());
  }
  try {
    if (doc.at("schema").get<std::string>() != kReportSchema) throw Error("unsupported report schema");
    Report r;
    r.model = doc.at("model").get<std::string>();
    r.stage = doc.at("stage").get<std::string>();
    r.notes = doc.at("notes").get<std::vector<std::string>>();
    for (const auto& s : doc.at("sections")) {
      ReportSection sec{s.at("name").get<std::string>(), {}};
      for (const auto& j : s.at("entries")) {
        ReportEntry e;
        e.id = j.at("id").get<std::string>();
        e.title = j.at("title").get<std::string>();
        e.kind = kind_from_string(j.at("kind").get<std::string>());
        e.value = j.at("value").get<std::string>();
        e.status = status_from_string(j.at("status").get<std::string>());
        if (j.contains("scalars"))
          for (const auto& x : j.at("scalars"))
            e.scalars.emplace_back(rational_from(x.at("re").get<std::string>()),
                                   rational_from(x.at("im").get<std::string>()));
        if (j.contains("expected")) e.expected = j.at("expected").get<std::string>();
        if (j.contains("detail")) e.detail = j.at("detail").get<std::string>();
        sec.entries.push_back(std::move(e));
      }
      r.sections.push_back(std::move(sec));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed report JSON: ") + e.what());
  }
}

bool values_equal(EntryKind kind, const std::string& actual, const std::string& expected, const Point& fixed) {
  const Bindings sub = as_bindings(fixed);
  auto expr_eq = [&](const std::string& a, const std::string& b) {
    return parse_expression(a) == parse_expression(b).substitute(sub);
  };
  auto form_eq = [&](const std::string& a, const std::string& b) {
    const DifferentialForm x = parse_form(a);
    const DifferentialForm y = parse_form(b).substitute(sub);
    return x == y || (x.is_zero() && y.is_zero());
  };
  try {
    switch (kind) {
      case EntryKind::Expr:
        return expr_eq(actual, expected);
      case EntryKind::Exprs:
        return equal_lists(actual, expected, expr_eq);
      case EntryKind::Form:
        return form_eq(actual, expected);
      case EntryKind::Forms:
        return equal_lists(actual, expected, form_eq);
      case EntryKind::Fields:
        return equal_lists(fields_as_expression(actual), fields_as_expression(expected), expr_eq);
      case EntryKind::Span: {
        std::vector<Vector> b = parse_span(expected);
        for (auto& v : b)
          for (auto& x : v) x = x.substitute(sub);
        return same_span(parse_span(actual), b);
      }
      case EntryKind::Spans: {
        const auto xs = split_top(actual, ';');
        const auto ys = split_top(expected, ';');
        if (xs.size() != ys.size()) return false;
        std::vector<bool> used(ys.size(), false);
        for (const auto& x : xs) {
          bool found = false;
          for (std::size_t j = 0; j < ys.size() && !found; ++j)
            if (!used[j] && values_equal(EntryKind::Span, x, ys[j], fixed)) used[j] = found = true;
          if (!found) return false;
        }
        return true;
      }
      case EntryKind::Text:
        return trim(actual) == trim(expected);
    }
  } catch (const Error&) {
    return false;
  }
  return false;
}

std::vector<std::string> compare_reports(const Report& actual, const Report& golden) {
  std::vector<std::string> out;
  if (actual.model != golden.model) out.push_back("model: '" + actual.model + "' vs golden '" + golden.model + "'");
  for (const auto& sec : golden.sections)
    for (const auto& g : sec.entries) {
      const ReportEntry* a = actual.find(g.id);
      if (!a) {
        out.push_back(g.id + ": missing");
        continue;
      }
      if (a->status != g.status)
        out.push_back(g.id + ": status " + to_string(a->status) + " vs golden " + to_string(g.status));
      if (a->kind != g.kind) {
        out.push_back(g.id + ": kind " + to_string(a->kind) + " vs golden " + to_string(g.kind));
      } else if (a->value != g.value && !values_equal(g.kind, a->value, g.value)) {
        out.push_back(g.id + ": '" + a->value + "' vs golden '" + g.value + "'");
      }
    }
  return out;
}

}  // namespace gaq
