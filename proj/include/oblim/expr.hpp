#pragma once

// Expression grammar shared by the CLI and bindings:
//   group:  Sym(n) | C(n) | prod(G1,...,Gk) | wreath(G, n) | semidirect(M, G)
//   module: natural(p) | trivial(p, d) | tensor(M1,...,Mk) | power(M, n)
// A module expression is interpreted against the shape of the group
// expression: natural(p) needs Sym(p+1), tensor factors pair off with prod
// factors, power(M, n) sits over wreath(G, n).  semidirect is only legal as
// the outermost group constructor and carries its module inside.

#include <optional>
#include <string>

#include "oblim/group.hpp"
#include "oblim/module.hpp"

namespace oblim {

struct ParsedContext {
  GroupPtr group;                // the full group, semidirect included
  GroupPtr gamma;                // acting group (== group unless semidirect)
  std::optional<GModule> module; // module over gamma, when given
  bool semidirect = false;
  std::string module_text;       // canonical form of the module expression
};

// module_expr may be empty; it must be empty when group_expr is a semidirect.
ParsedContext parse_context(const std::string& group_expr,
                            const std::string& module_expr = "");

}  // namespace oblim
