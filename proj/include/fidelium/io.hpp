#pragma once

#include <memory>
#include <optional>
#include <string>

#include "fidelium/algebra.hpp"

namespace fidelium {

/** An algebra as loaded from a file: the Heyting structure plus the Boolean
 * wrapper when the algebra has complements. */
struct LoadedAlgebra {
  HeytingStructure heyting;
  std::optional<BooleanStructure> boolean;

  AlgebraClass classification() const { return heyting.classification(); }
};

using AlgebraHandle = std::shared_ptr<const LoadedAlgebra>;

/** Parses an algebra record.
 *
 * Accepted keys: elements (required), leq (list of [lo, hi] pairs), meet /
 * join / implies (nested objects keyed by element, checked against the
 * computed tables), neg (unary table, carried verbatim), complement (unary
 * table, checked), top (checked), bottom (designates the bottom element).
 * Either leq or meet must be present. */
AlgebraHandle load_algebra_text(const std::string& text);
AlgebraHandle load_algebra_file(const std::string& path);

/** Canonical serialization: elements sorted, the full strict order listed,
 * derived tables omitted. save(load(save(x))) == save(load(x)) byte for
 * byte. */
std::string save_algebra(const LoadedAlgebra& a);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace fidelium
