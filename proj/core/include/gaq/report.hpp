#ifndef GAQ_REPORT_HPP
#define GAQ_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "gaq/rational_expr.hpp"

namespace gaq {

inline constexpr std::string_view kReportSchema = "gaq-report v1";

enum class Status { Pass, Fail, NotApplicable };
std::string to_string(Status s);
Status status_from_string(const std::string& s);

/// How `value` is compared against an expectation:
///   expr    one rational expression
///   exprs   comma-separated expressions (operators use the symbol D for d/dtau)
///   form    one differential form
///   forms   comma-separated forms
///   fields  comma-separated vector fields, D[x] for the partial in x
///   span    span{(..), (..)} of constant vectors, compared as subspaces
///   spans   semicolon-separated spans, compared as an unordered set
///   text    verbatim after trimming
enum class EntryKind { Expr, Exprs, Form, Forms, Fields, Span, Spans, Text };
std::string to_string(EntryKind k);
EntryKind kind_from_string(const std::string& s);

struct ReportEntry {
  std::string id;
  std::string title;
  EntryKind kind = EntryKind::Text;
  std::string value;
  /// Exact numeric data carried alongside `value` where it exists.
  std::vector<Scalar> scalars;
  Status status = Status::Pass;
  std::optional<std::string> expected;
  std::string detail;
};

struct ReportSection {
  std::string name;
  std::vector<ReportEntry> entries;
};

struct Report {
  std::string model;
  std::string stage;
  std::vector<std::string> notes;
  std::vector<ReportSection> sections;

  std::size_t count(Status s) const;
  bool passed() const { return count(Status::Fail) == 0; }
  const ReportEntry* find(const std::string& id) const;
  ReportEntry* find(const std::string& id);
};

std::string render_text(const Report& r);
std::string render_json(const Report& r);
/// Inverse of render_json; throws Error on malformed documents.
Report report_from_json(const std::string& text);

/// Canonical comparison of two values of the given kind; parameters in
/// `fixed` are substituted into `expected` first.
bool values_equal(EntryKind kind, const std::string& actual, const std::string& expected,
                  const Point& fixed = {});

/// One line per golden entry that is missing or differs in status or value.
std::vector<std::string> compare_reports(const Report& actual, const Report& golden);

}  // namespace gaq

#endif  // GAQ_REPORT_HPP
