#include "fidelium/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fidelium {

bool operator==(const Term& a, const Term& b) {
  if (a.is_var != b.is_var) return false;
  return a.is_var ? a.var == b.var : a.name == b.name;
}

static FormulaPtr make_node(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

FormulaPtr Formula::prop(std::string name) {
  Formula f;
  f.kind = Conn::prop;
  f.label = std::move(name);
  return make_node(std::move(f));
}
FormulaPtr Formula::mem(Term l, Term r) {
  Formula f;
  f.kind = Conn::mem;
  f.lhs = std::move(l);
  f.rhs = std::move(r);
  return make_node(std::move(f));
}
FormulaPtr Formula::eq(Term l, Term r) {
  Formula f;
  f.kind = Conn::eq;
  f.lhs = std::move(l);
  f.rhs = std::move(r);
  return make_node(std::move(f));
}
static FormulaPtr binary(Conn k, FormulaPtr x, FormulaPtr y) {
  Formula f;
  f.kind = k;
  f.a = std::move(x);
  f.b = std::move(y);
  return make_node(std::move(f));
}
FormulaPtr Formula::conj(FormulaPtr x, FormulaPtr y) { return binary(Conn::conj, std::move(x), std::move(y)); }
FormulaPtr Formula::disj(FormulaPtr x, FormulaPtr y) { return binary(Conn::disj, std::move(x), std::move(y)); }
FormulaPtr Formula::imp(FormulaPtr x, FormulaPtr y) { return binary(Conn::imp, std::move(x), std::move(y)); }
FormulaPtr Formula::iff(FormulaPtr x, FormulaPtr y) {
  return conj(imp(x, y), imp(y, x));
}
FormulaPtr Formula::neg(FormulaPtr x) {
  Formula f;
  f.kind = Conn::neg;
  f.a = std::move(x);
  return make_node(std::move(f));
}
FormulaPtr Formula::circ(FormulaPtr x) {
  Formula f;
  f.kind = Conn::circ;
  f.a = std::move(x);
  return make_node(std::move(f));
}
static FormulaPtr quant(Conn k, std::string var, FormulaPtr body) {
  Formula f;
  f.kind = k;
  f.label = std::move(var);
  f.a = std::move(body);
  return make_node(std::move(f));
}
FormulaPtr Formula::forall(std::string var, FormulaPtr body) {
  return quant(Conn::forall, std::move(var), std::move(body));
}
FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
  return quant(Conn::exists, std::move(var), std::move(body));
}

bool equal(const FormulaPtr& x, const FormulaPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->kind != y->kind) return false;
  switch (x->kind) {
    case Conn::prop: return x->label == y->label;
    case Conn::mem:
    case Conn::eq: return x->lhs == y->lhs && x->rhs == y->rhs;
    case Conn::conj:
    case Conn::disj:
    case Conn::imp: return equal(x->a, y->a) && equal(x->b, y->b);
    case Conn::neg:
    case Conn::circ: return equal(x->a, y->a);
    case Conn::forall:
    case Conn::exists: return x->label == y->label && equal(x->a, y->a);
  }
  return false;
}

namespace {

std::string term_text(const Term& t, const std::function<std::string(NameId)>& namer) {
  if (t.is_var) return t.var;
  if (namer) return namer(t.name);
  return "#" + std::to_string(t.name);
}

// precedence levels: imp 1, disj 2, conj 3, prefix 4, atoms 5
int level(Conn k) {
  switch (k) {
    case Conn::imp: return 1;
    case Conn::disj: return 2;
    case Conn::conj: return 3;
    case Conn::neg:
    case Conn::circ:
    case Conn::forall:
    case Conn::exists: return 4;
    default: return 5;
  }
}

void print_rec(std::ostream& out, const FormulaPtr& f,
               const std::function<std::string(NameId)>& namer, int min_level) {
  const bool parens = level(f->kind) < min_level;
  if (parens) out << "(";
  switch (f->kind) {
    case Conn::prop: out << f->label; break;
    case Conn::mem:
      out << term_text(f->lhs, namer) << " in " << term_text(f->rhs, namer);
      break;
    case Conn::eq:
      out << term_text(f->lhs, namer) << " = " << term_text(f->rhs, namer);
      break;
    case Conn::conj:
      print_rec(out, f->a, namer, 3);
      out << " & ";
      print_rec(out, f->b, namer, 4);
      break;
    case Conn::disj:
      print_rec(out, f->a, namer, 2);
      out << " | ";
      print_rec(out, f->b, namer, 3);
      break;
    case Conn::imp:
      print_rec(out, f->a, namer, 2);
      out << " -> ";
      print_rec(out, f->b, namer, 1);
      break;
    case Conn::neg:
      out << "~";
      print_rec(out, f->a, namer, 4);
      break;
    case Conn::circ:
      out << "o ";
      print_rec(out, f->a, namer, 4);
      break;
    case Conn::forall:
    case Conn::exists:
      out << (f->kind == Conn::forall ? "forall " : "exists ") << f->label << " . ";
      print_rec(out, f->a, namer, 1);
      break;
  }
  if (parens) out << ")";
}

struct Parser {
  const std::string& src;
  const ParseEnv& env;
  std::size_t pos = 0;
  std::vector<std::string> bound{};

  [[noreturn]] void err(const std::string& msg) {
    fail(ErrorCode::syntax_error, msg + " at offset " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool eat(const std::string& tok) {
    skip_ws();
    if (src.compare(pos, tok.size(), tok) == 0) {
      // keep identifiers whole: "in" must not eat the prefix of "inner"
      if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
        std::size_t end = pos + tok.size();
        if (end < src.size() &&
            (std::isalnum(static_cast<unsigned char>(src[end])) || src[end] == '_' ||
             src[end] == '\''))
          return false;
      }
      pos += tok.size();
      return true;
    }
    return false;
  }

  std::optional<std::string> ident() {
    skip_ws();
    std::size_t start = pos;
    if (start >= src.size()) return std::nullopt;
    if (!std::isalpha(static_cast<unsigned char>(src[start])) && src[start] != '_')
      return std::nullopt;
    std::size_t end = start + 1;
    while (end < src.size() && (std::isalnum(static_cast<unsigned char>(src[end])) ||
                                src[end] == '_' || src[end] == '\''))
      ++end;
    std::string word = src.substr(start, end - start);
    if (word == "in" || word == "forall" || word == "exists" || word == "o") return std::nullopt;
    pos = end;
    return word;
  }

  Term resolve(const std::string& word) {
    if (std::find(bound.rbegin(), bound.rend(), word) != bound.rend())
      return Term::make_var(word);
    if (env.lookup_name)
      if (auto id = env.lookup_name(word)) return Term::make_name(*id);
    return Term::make_var(word);  // free variable or propositional atom
  }

  FormulaPtr atom_or_pred() {
    skip_ws();
    if (eat("(")) {
      FormulaPtr f = implication();
      if (!eat(")")) err("expected ')'");
      return f;
    }
    auto word = ident();
    if (!word) err("expected a formula");
    Term l = resolve(*word);
    skip_ws();
    if (eat("in")) {
      auto w2 = ident();
      if (!w2) err("expected a term after 'in'");
      return Formula::mem(l, resolve(*w2));
    }
    if (eat("=")) {
      auto w2 = ident();
      if (!w2) err("expected a term after '='");
      return Formula::eq(l, resolve(*w2));
    }
    if (!l.is_var) err("name '" + *word + "' used as a formula");
    if (!env.allow_prop_atoms) err("unexpected atom '" + *word + "'");
    return Formula::prop(l.var);
  }

  FormulaPtr unary() {
    skip_ws();
    if (eat("~")) return Formula::neg(unary());
    if (eat("o")) return Formula::circ(unary());
    if (eat("forall")) return quantifier(true);
    if (eat("exists")) return quantifier(false);
    return atom_or_pred();
  }

  FormulaPtr quantifier(bool universal) {
    auto var = ident();
    if (!var) err("expected a variable after the quantifier");
    std::optional<Term> bound_term;
    skip_ws();
    if (eat("in")) {
      auto w = ident();
      if (!w) err("expected a term after 'in'");
      bound_term = resolve(*w);
      if (bound_term->is_var && bound_term->var == *var)
        err("quantifier bound mentions the bound variable");
    }
    if (!eat(".")) err("expected '.' after the quantifier head");
    bound.push_back(*var);
    FormulaPtr body = implication();
    bound.pop_back();
    if (bound_term) {
      FormulaPtr guard = Formula::mem(Term::make_var(*var), *bound_term);
      body = universal ? Formula::imp(guard, body) : Formula::conj(guard, body);
    }
    return universal ? Formula::forall(*var, body) : Formula::exists(*var, body);
  }

  FormulaPtr conjunction() {
    FormulaPtr f = unary();
    while (eat("&")) f = Formula::conj(f, unary());
    return f;
  }

  FormulaPtr disjunction() {
    FormulaPtr f = conjunction();
    while (eat("|")) f = Formula::disj(f, conjunction());
    return f;
  }

  FormulaPtr implication() {
    FormulaPtr f = disjunction();
    skip_ws();
    if (eat("<->")) return Formula::iff(f, implication());
    if (eat("->")) return Formula::imp(f, implication());
    return f;
  }

  FormulaPtr run() {
    FormulaPtr f = implication();
    skip_ws();
    if (pos != src.size()) err("trailing input");
    return f;
  }
};

}  // namespace

std::string print_formula(const FormulaPtr& f, const std::function<std::string(NameId)>& namer) {
  std::ostringstream out;
  print_rec(out, f, namer, 1);
  return out.str();
}

FormulaPtr parse_formula(const std::string& text, const ParseEnv& env) {
  Parser p{text, env};
  return p.run();
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& t) {
  auto sub_term = [&](const Term& x) { return x.is_var && x.var == var ? t : x; };
  switch (f->kind) {
    case Conn::prop: return f;
    case Conn::mem: return Formula::mem(sub_term(f->lhs), sub_term(f->rhs));
    case Conn::eq: return Formula::eq(sub_term(f->lhs), sub_term(f->rhs));
    case Conn::conj: return Formula::conj(substitute(f->a, var, t), substitute(f->b, var, t));
    case Conn::disj: return Formula::disj(substitute(f->a, var, t), substitute(f->b, var, t));
    case Conn::imp: return Formula::imp(substitute(f->a, var, t), substitute(f->b, var, t));
    case Conn::neg: return Formula::neg(substitute(f->a, var, t));
    case Conn::circ: return Formula::circ(substitute(f->a, var, t));
    case Conn::forall:
    case Conn::exists:
      if (f->label == var) return f;  // shadowed
      if (t.is_var && t.var == f->label)
        fail(ErrorCode::syntax_error,
             "substitution would capture '" + t.var + "' under the quantifier");
      {
        FormulaPtr body = substitute(f->a, var, t);
        return f->kind == Conn::forall ? Formula::forall(f->label, body)
                                       : Formula::exists(f->label, body);
      }
  }
  return f;
}

FormulaPtr expand_circ(const FormulaPtr& f) {
  switch (f->kind) {
    case Conn::prop:
    case Conn::mem:
    case Conn::eq: return f;
    case Conn::conj: return Formula::conj(expand_circ(f->a), expand_circ(f->b));
    case Conn::disj: return Formula::disj(expand_circ(f->a), expand_circ(f->b));
    case Conn::imp: return Formula::imp(expand_circ(f->a), expand_circ(f->b));
    case Conn::neg: return Formula::neg(expand_circ(f->a));
    case Conn::circ: {
      FormulaPtr g = expand_circ(f->a);
      return Formula::neg(Formula::conj(g, Formula::neg(g)));
    }
    case Conn::forall: return Formula::forall(f->label, expand_circ(f->a));
    case Conn::exists: return Formula::exists(f->label, expand_circ(f->a));
  }
  return f;
}

FormulaPtr map_names(const FormulaPtr& f, const std::function<NameId(NameId)>& map) {
  auto mt = [&](const Term& x) { return x.is_var ? x : Term::make_name(map(x.name)); };
  switch (f->kind) {
    case Conn::prop: return f;
    case Conn::mem: return Formula::mem(mt(f->lhs), mt(f->rhs));
    case Conn::eq: return Formula::eq(mt(f->lhs), mt(f->rhs));
    case Conn::conj: return Formula::conj(map_names(f->a, map), map_names(f->b, map));
    case Conn::disj: return Formula::disj(map_names(f->a, map), map_names(f->b, map));
    case Conn::imp: return Formula::imp(map_names(f->a, map), map_names(f->b, map));
    case Conn::neg: return Formula::neg(map_names(f->a, map));
    case Conn::circ: return Formula::circ(map_names(f->a, map));
    case Conn::forall: return Formula::forall(f->label, map_names(f->a, map));
    case Conn::exists: return Formula::exists(f->label, map_names(f->a, map));
  }
  return f;
}

FormulaPtr swap_names(const FormulaPtr& f, NameId u, NameId v) {
  return map_names(f, [&](NameId x) { return x == u ? v : x == v ? u : x; });
}

static void formula_names_rec(const FormulaPtr& f, std::vector<NameId>& out) {
  auto visit_term = [&](const Term& t) {
    if (!t.is_var) out.push_back(t.name);
  };
  switch (f->kind) {
    case Conn::prop: return;
    case Conn::mem:
    case Conn::eq:
      visit_term(f->lhs);
      visit_term(f->rhs);
      return;
    case Conn::conj:
    case Conn::disj:
    case Conn::imp:
      formula_names_rec(f->a, out);
      formula_names_rec(f->b, out);
      return;
    case Conn::neg:
    case Conn::circ:
    case Conn::forall:
    case Conn::exists: formula_names_rec(f->a, out); return;
  }
}

std::vector<NameId> formula_names(const FormulaPtr& f) {
  std::vector<NameId> out;
  formula_names_rec(f, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

static void free_vars_rec(const FormulaPtr& f, std::vector<std::string>& scope,
                          std::vector<std::string>& out) {
  auto visit_term = [&](const Term& t) {
    if (!t.is_var) return;
    if (std::find(scope.begin(), scope.end(), t.var) != scope.end()) return;
    if (std::find(out.begin(), out.end(), t.var) == out.end()) out.push_back(t.var);
  };
  switch (f->kind) {
    case Conn::prop: return;
    case Conn::mem:
    case Conn::eq:
      visit_term(f->lhs);
      visit_term(f->rhs);
      return;
    case Conn::conj:
    case Conn::disj:
    case Conn::imp:
      free_vars_rec(f->a, scope, out);
      free_vars_rec(f->b, scope, out);
      return;
    case Conn::neg:
    case Conn::circ: free_vars_rec(f->a, scope, out); return;
    case Conn::forall:
    case Conn::exists:
      scope.push_back(f->label);
      free_vars_rec(f->a, scope, out);
      scope.pop_back();
      return;
  }
}

std::vector<std::string> free_vars(const FormulaPtr& f) {
  std::vector<std::string> scope, out;
  free_vars_rec(f, scope, out);
  return out;
}

bool is_closed(const FormulaPtr& f) { return free_vars(f).empty(); }

bool is_propositional(const FormulaPtr& f) {
  switch (f->kind) {
    case Conn::prop: return true;
    case Conn::mem:
    case Conn::eq:
    case Conn::forall:
    case Conn::exists: return false;
    case Conn::conj:
    case Conn::disj:
    case Conn::imp: return is_propositional(f->a) && is_propositional(f->b);
    case Conn::neg:
    case Conn::circ: return is_propositional(f->a);
  }
  return false;
}

bool mentions_neg_or_circ(const FormulaPtr& f) {
  switch (f->kind) {
    case Conn::neg:
    case Conn::circ: return true;
    case Conn::prop:
    case Conn::mem:
    case Conn::eq: return false;
    case Conn::conj:
    case Conn::disj:
    case Conn::imp: return mentions_neg_or_circ(f->a) || mentions_neg_or_circ(f->b);
    case Conn::forall:
    case Conn::exists: return mentions_neg_or_circ(f->a);
  }
  return false;
}

static void closure_rec(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  for (const auto& g : out)
    if (equal(g, f)) return;
  switch (f->kind) {
    case Conn::prop:
    case Conn::mem:
    case Conn::eq: break;
    case Conn::conj:
    case Conn::disj:
    case Conn::imp:
      closure_rec(f->a, out);
      closure_rec(f->b, out);
      break;
    case Conn::neg:
    case Conn::circ:
    case Conn::forall:
    case Conn::exists: closure_rec(f->a, out); break;
  }
  for (const auto& g : out)
    if (equal(g, f)) return;
  out.push_back(f);
}

std::vector<FormulaPtr> subformula_closure(const std::vector<FormulaPtr>& roots) {
  std::vector<FormulaPtr> out;
  for (const auto& r : roots) closure_rec(r, out);
  return out;
}

}  // namespace fidelium
