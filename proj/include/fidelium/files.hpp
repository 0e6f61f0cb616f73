#pragma once

#include <memory>

#include "fidelium/fidel.hpp"
#include "fidelium/names.hpp"

namespace fidelium {

/** Structure record:
 *
 *   {"algebra": <path or inline algebra record>,
 *    "kind": "n4" | "c1" | "comega",
 *    "N": {"x": ["a", "b"], ...},       omitted family sets default to full
 *    "O": {"x": [...], ...},            c1 only
 *    "strict": true}
 *
 * A string under "algebra" is a path resolved against base_dir (for files,
 * the directory of the structure file). Loading validates the type
 * invariants but not the closure conditions; run verify_structure for
 * those. */
FidelStructure load_structure_text(const std::string& text, const std::string& base_dir = ".");
FidelStructure load_structure_file(const std::string& path);
std::string save_structure(const FidelStructure& s);

/** Universe record:
 *
 *   {"algebra": <path or inline> | "structure": <path or inline>,
 *    "names": [["w", "{}"], ["u", "{(w, half)}"], ...]}
 *
 * Name expressions follow the grammar of parse_name_expr and may refer to
 * the labels bound by earlier entries. */
struct LoadedUniverse {
  std::shared_ptr<UniverseFragment> fragment;
  std::optional<FidelStructure> structure;
};

LoadedUniverse load_universe_text(const std::string& text, const std::string& base_dir = ".");
LoadedUniverse load_universe_file(const std::string& path);

}  // namespace fidelium
