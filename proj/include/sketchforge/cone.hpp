#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sketchforge/category.hpp"

namespace sketchforge {

using SortTuple = std::vector<std::string>;

/// Renders a tuple as "(s,t)".
std::string to_string(const SortTuple& tuple);

struct ConeLeg {
  std::string object;
  Morphism projection;  // apex -> object

  bool operator==(const ConeLeg&) const = default;
};

/// An n-fold cone: apex, and n legs each with its projection out of the apex.
struct Cone {
  std::string name;
  std::string apex;
  std::vector<ConeLeg> legs;

  std::size_t arity() const { return legs.size(); }
  bool operator==(const Cone&) const = default;
};

/// Sorts, plus a partial map from sort tuples to the objects they index.
struct SortedStructure {
  std::vector<std::string> sorts;
  std::map<SortTuple, std::string> object_index;

  /// Object indexed by the 1-tuple (s).
  std::optional<std::string> distinguished(const std::string& sort) const;
  std::optional<std::string> object_of(const SortTuple& tuple) const;
  /// Inverse lookup; empty when the object is not indexed.
  std::optional<SortTuple> tuple_of(const std::string& object) const;
  bool has_sort(const std::string& s) const;

  bool operator==(const SortedStructure&) const = default;
};

}  // namespace sketchforge
