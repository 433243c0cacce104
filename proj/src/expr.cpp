#include "oblim/expr.hpp"

#include <cctype>
#include <vector>

namespace oblim {

namespace {

struct Arg;

struct Node {
  std::string head;
  std::vector<Arg> args;
};

struct Arg {
  std::optional<Node> expr;
  std::optional<int64_t> num;
};

struct Lexer {
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(i) + " of \"" + s + "\"");
  }
};

Node parse_node(Lexer& lx);

Arg parse_arg(Lexer& lx) {
  lx.skip();
  if (lx.i >= lx.s.size()) lx.fail("expected an argument");
  Arg a;
  if (std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
    int64_t v = 0;
    while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
      v = v * 10 + (lx.s[lx.i] - '0');
      if (v > 1000000000) lx.fail("number too large");
      ++lx.i;
    }
    a.num = v;
  } else {
    a.expr = parse_node(lx);
  }
  return a;
}

Node parse_node(Lexer& lx) {
  lx.skip();
  size_t start = lx.i;
  while (lx.i < lx.s.size() &&
         (std::isalnum(static_cast<unsigned char>(lx.s[lx.i])) || lx.s[lx.i] == '_'))
    ++lx.i;
  if (lx.i == start) lx.fail("expected a constructor name");
  Node n;
  n.head = lx.s.substr(start, lx.i - start);
  if (!lx.eat('(')) lx.fail("expected '(' after " + n.head);
  n.args.push_back(parse_arg(lx));
  while (lx.eat(',')) n.args.push_back(parse_arg(lx));
  if (!lx.eat(')')) lx.fail("expected ')' closing " + n.head);
  return n;
}

Node parse_tree(const std::string& text) {
  Lexer lx{text};
  Node n = parse_node(lx);
  lx.skip();
  if (lx.i != text.size()) lx.fail("trailing input");
  return n;
}

std::string unparse(const Node& n) {
  std::string out = n.head + "(";
  for (size_t k = 0; k < n.args.size(); ++k) {
    if (k) out += ",";
    out += n.args[k].num ? std::to_string(*n.args[k].num) : unparse(*n.args[k].expr);
  }
  return out + ")";
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int64_t num_arg(const Node& n, size_t k, const char* what) {
  if (k >= n.args.size() || !n.args[k].num)
    throw ParseError(n.head + ": expected " + what + " as argument " +
                     std::to_string(k + 1));
  return *n.args[k].num;
}

const Node& expr_arg(const Node& n, size_t k) {
  if (k >= n.args.size() || !n.args[k].expr)
    throw ParseError(n.head + ": expected an expression as argument " +
                     std::to_string(k + 1));
  return *n.args[k].expr;
}

void arity(const Node& n, size_t want) {
  if (n.args.size() != want)
    throw ParseError(n.head + ": expected " + std::to_string(want) + " argument(s), got " +
                     std::to_string(n.args.size()));
}

struct Realized {
  GroupPtr g;
  std::vector<Realized> kids;
};

Realized realize_group(const Node& n) {
  Realized r;
  if (n.head == "Sym") {
    arity(n, 1);
    const int64_t v = num_arg(n, 0, "a point count");
    if (v < 1 || v > 8) throw ParseError("Sym: argument must be between 1 and 8");
    r.g = symmetric_group(int(v));
  } else if (n.head == "C") {
    arity(n, 1);
    const int64_t v = num_arg(n, 0, "an order");
    if (v < 1 || v > 4096) throw ParseError("C: argument must be between 1 and 4096");
    r.g = cyclic_group(int(v));
  } else if (n.head == "prod") {
    if (n.args.size() < 2) throw ParseError("prod: needs at least two factors");
    std::vector<GroupPtr> factors;
    for (size_t k = 0; k < n.args.size(); ++k) {
      r.kids.push_back(realize_group(expr_arg(n, k)));
      factors.push_back(r.kids.back().g);
    }
    r.g = direct_product(factors);
  } else if (n.head == "wreath") {
    arity(n, 2);
    r.kids.push_back(realize_group(expr_arg(n, 0)));
    const int64_t v = num_arg(n, 1, "a copy count");
    if (v < 2 || v > 5) throw ParseError("wreath: copy count must be between 2 and 5");
    r.g = wreath_cyclic(r.kids.back().g, int(v));
  } else if (n.head == "semidirect") {
    throw ParseError("semidirect is only allowed as the outermost group constructor");
  } else if (n.head == "natural" || n.head == "trivial" || n.head == "tensor" ||
             n.head == "power") {
    throw ParseError(n.head + " is a module constructor, not a group");
  } else {
    throw ParseError("unknown group constructor " + n.head);
  }
  return r;
}

GModule realize_module(const Node& m, const Node& gnode, const Realized& r) {
  if (m.head == "natural") {
    arity(m, 1);
    const int64_t p = num_arg(m, 0, "a prime");
    if (!is_prime(p)) throw ParseError("natural: argument must be prime");
    if (gnode.head != "Sym" || num_arg(gnode, 0, "a point count") != p + 1)
      throw ParseError("natural(" + std::to_string(p) + ") needs the group Sym(" +
                       std::to_string(p + 1) + ")");
    return natural_module_over(r.g, int(p));
  }
  if (m.head == "trivial") {
    arity(m, 2);
    const int64_t p = num_arg(m, 0, "a prime");
    const int64_t d = num_arg(m, 1, "a dimension");
    if (!is_prime(p) || p > 13) throw ParseError("trivial: first argument must be a small prime");
    if (d < 0 || d > 64) throw ParseError("trivial: dimension must be between 0 and 64");
    return trivial_module(r.g, uint8_t(p), int(d));
  }
  if (m.head == "tensor") {
    if (gnode.head != "prod" || gnode.args.size() != m.args.size())
      throw ParseError("tensor needs a prod group with one factor per module factor");
    std::vector<GModule> factors;
    for (size_t k = 0; k < m.args.size(); ++k)
      factors.push_back(realize_module(expr_arg(m, k), expr_arg(gnode, k), r.kids[k]));
    return tensor_module(r.g, factors);
  }
  if (m.head == "power") {
    arity(m, 2);
    if (gnode.head != "wreath" ||
        num_arg(gnode, 1, "a copy count") != num_arg(m, 1, "a copy count"))
      throw ParseError("power(M,n) needs the group wreath(G,n) with the same n");
    GModule base = realize_module(expr_arg(m, 0), expr_arg(gnode, 0), r.kids[0]);
    return power_module(r.g, base);
  }
  if (m.head == "Sym" || m.head == "C" || m.head == "prod" || m.head == "wreath" ||
      m.head == "semidirect")
    throw ParseError(m.head + " is a group constructor, not a module");
  throw ParseError("unknown module constructor " + m.head);
}

}  // namespace

ParsedContext parse_context(const std::string& group_expr, const std::string& module_expr) {
  if (group_expr.empty()) throw ParseError("empty group expression");
  Node g = parse_tree(group_expr);
  ParsedContext out;
  if (g.head == "semidirect") {
    arity(g, 2);
    if (!module_expr.empty())
      throw ParseError("a semidirect group carries its own module; drop the module expression");
    const Node& mnode = expr_arg(g, 0);
    const Node& gnode = expr_arg(g, 1);
    Realized r = realize_group(gnode);
    GModule m = realize_module(mnode, gnode, r);
    out.gamma = r.g;
    out.module = m;
    out.group = semidirect_product(m);
    out.semidirect = true;
    out.module_text = unparse(mnode);
  } else {
    Realized r = realize_group(g);
    out.group = r.g;
    out.gamma = r.g;
    if (!module_expr.empty()) {
      Node m = parse_tree(module_expr);
      out.module = realize_module(m, g, r);
      out.module_text = unparse(m);
    }
  }
  return out;
}

}  // namespace oblim
