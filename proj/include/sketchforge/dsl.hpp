#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sketchforge/sketch.hpp"

namespace sketchforge {

/// 1-based line and column; `offset`/`length` address the source bytes.
struct Span {
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t end_line = 1;
  std::size_t end_col = 1;
  std::size_t offset = 0;
  std::size_t length = 0;
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  Span span;
  std::string message;
  std::string rule;
};

/// "file:3:7: error [unresolved-name] ..."
std::string format_diagnostic(const Diagnostic& d, const std::string& file = "<input>");

/// A name with its source location. Equality ignores the location.
struct NameRef {
  std::string text;
  Span span;

  bool operator==(const NameRef& o) const { return text == o.text; }
};

struct ObjectDecl {
  NameRef name;
  std::vector<std::vector<NameRef>> tuples;  // every "@ (...)" group
  bool operator==(const ObjectDecl&) const = default;
};

struct GenDecl {
  NameRef name;
  NameRef dom;
  NameRef cod;
  bool operator==(const GenDecl&) const = default;
};

struct IdDecl {
  NameRef object;
  NameRef name;
  bool operator==(const IdDecl&) const = default;
};

/// compose f.g = h
struct ComposeDecl {
  std::vector<NameRef> path;
  NameRef result;
  bool operator==(const ComposeDecl&) const = default;
};

struct LegDecl {
  NameRef object;
  std::vector<NameRef> path;  // left to right: "f.g" is f then g
  bool operator==(const LegDecl&) const = default;
};

struct ConeDecl {
  NameRef name;
  NameRef apex;
  std::vector<LegDecl> legs;
  bool operator==(const ConeDecl&) const = default;
};

/// Parsed form of
///
///   sketch NAME {
///     sorts s t
///     object NAME [@ (s t)]
///     gen NAME : A -> B
///     id A NAME
///     compose f.g = h
///     free
///     cone NAME : APEX => (OBJ via PATH, ...)   or   => ()
///     distinguished A B
///   }
///
/// Without `free` the category is explicit: identities are named id_A unless
/// declared, and every composable pair of generators needs a compose line.
struct SketchDocument {
  NameRef name;
  std::vector<NameRef> sorts;
  bool free = false;
  std::vector<ObjectDecl> objects;
  std::vector<GenDecl> gens;
  std::vector<IdDecl> ids;
  std::vector<ComposeDecl> composes;
  std::vector<ConeDecl> cones;
  std::vector<NameRef> distinguished;

  bool operator==(const SketchDocument&) const = default;
};

struct ParseResult {
  SketchDocument document;
  std::vector<Diagnostic> diagnostics;

  bool ok() const;
};

/// Syntax only; recovers at the next item after an error.
ParseResult parse_document(const std::string& text);

/// Deterministic text form; reparses to an equal document.
std::string print_document(const SketchDocument& doc);

struct BuildResult {
  std::optional<Sketch> sketch;
  std::vector<std::string> distinguished;
  std::vector<Diagnostic> diagnostics;
};

/// Resolves names and builds the category. Rules: "unresolved-name",
/// "duplicate-name", "not-composable", "missing-composite", "bad-composite",
/// "free-and-table", "category-law".
BuildResult build_sketch(const SketchDocument& doc);

/// Parse and build in one step.
BuildResult parse_sketch(const std::string& text);

/// Document of any sketch; lazy categories are materialized first.
SketchDocument document_of(const Sketch& s, const std::vector<std::string>& distinguished = {});
std::string print_sketch(const Sketch& s, const std::vector<std::string>& distinguished = {});

}  // namespace sketchforge
