#include "mlrf/loop.hpp"

#include <cctype>
#include <optional>

#include "mlrf/errors.hpp"

namespace mlrf {

namespace {

enum class Tok { Ident, Number, Plus, Minus, Star, Rel, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column; // 1-based
  bool primed = false;
};

class Lexer {
public:
  Lexer(std::string_view text, std::size_t line, std::size_t offset)
      : text_(text), line_(line), offset_(offset) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      std::size_t col = offset_ + i + 1;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[j])) ||
                text_[j] == '_'))
          ++j;
        Token t{Tok::Ident, std::string(text_.substr(i, j - i)), col};
        if (j < text_.size() && text_[j] == '\'') {
          t.primed = true;
          ++j;
        }
        out.push_back(t);
        i = j;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j])))
          ++j;
        if (j + 1 < text_.size() && text_[j] == '/' &&
            std::isdigit(static_cast<unsigned char>(text_[j + 1]))) {
          ++j;
          while (j < text_.size() &&
                 std::isdigit(static_cast<unsigned char>(text_[j])))
            ++j;
        }
        out.push_back({Tok::Number, std::string(text_.substr(i, j - i)), col});
        i = j;
      } else if (c == '+' || c == '-' || c == '*') {
        out.push_back({c == '+' ? Tok::Plus : c == '-' ? Tok::Minus : Tok::Star,
                       std::string(1, c), col});
        ++i;
      } else if (c == '<' || c == '>' || c == '=') {
        std::size_t j = i + 1;
        if (j < text_.size() && text_[j] == '=')
          ++j;
        out.push_back({Tok::Rel, std::string(text_.substr(i, j - i)), col});
        i = j;
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", line_,
                         col);
      }
    }
    out.push_back({Tok::End, "", offset_ + text_.size() + 1});
    return out;
  }

private:
  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
};

/// Linear expression over (x, x') plus a constant.
struct LinExpr {
  RatVec coeffs;
  Rational constant;
};

class ExprParser {
public:
  ExprParser(const std::vector<Token> &toks, const std::vector<std::string> &names,
             std::size_t line, bool allow_primed)
      : toks_(toks), names_(names), line_(line), allow_primed_(allow_primed) {}

  LinExpr expression() {
    LinExpr e{zeros(2 * names_.size()), Rational(0)};
    bool first = true;
    for (;;) {
      Rational sign = 1;
      if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
        sign = peek().kind == Tok::Minus ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      term(e, sign);
      first = false;
      if (peek().kind != Tok::Plus && peek().kind != Tok::Minus)
        break;
    }
    return e;
  }

  const Token &peek() const { return toks_[pos_]; }
  const Token &next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string &msg, const Token &t) const {
    throw ParseError(msg, line_, t.column);
  }

private:
  void term(LinExpr &e, Rational factor) {
    std::optional<std::size_t> var;
    bool expect_factor = true;
    while (expect_factor) {
      const Token &t = next();
      if (t.kind == Tok::Number) {
        factor *= parse_rational(t.text);
      } else if (t.kind == Tok::Ident) {
        if (var)
          fail("nonlinear term", t);
        var = lookup(t);
      } else {
        fail(t.kind == Tok::End ? "expected a term" : "unexpected '" + t.text + "'",
             t);
      }
      if (peek().kind == Tok::Star) {
        ++pos_;
      } else if (peek().kind == Tok::Ident && t.kind == Tok::Number) {
        // "2x" reads as 2*x.
      } else {
        expect_factor = false;
      }
    }
    if (var)
      e.coeffs[Eigen::Index(*var)] += factor;
    else
      e.constant += factor;
  }

  std::size_t lookup(const Token &t) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == t.text) {
        if (t.primed && !allow_primed_)
          fail("primed variable '" + t.text + "'' not allowed here", t);
        return t.primed ? names_.size() + i : i;
      }
    }
    fail("unknown variable '" + t.text + "'", t);
  }

  const std::vector<Token> &toks_;
  const std::vector<std::string> &names_;
  std::size_t line_;
  bool allow_primed_;
  std::size_t pos_ = 0;
};

/// "lhs op rhs" as a constraint over 2n columns.
Constraint parse_relation(std::string_view text, std::size_t line,
                          std::size_t offset,
                          const std::vector<std::string> &names,
                          bool allow_primed, bool allow_strict) {
  std::vector<Token> toks = Lexer(text, line, offset).run();
  ExprParser p(toks, names, line, allow_primed);
  LinExpr lhs = p.expression();
  const Token &op = p.next();
  if (op.kind != Tok::Rel)
    p.fail(op.kind == Tok::End ? "expected a relation" : "unexpected '" + op.text + "'",
           op);
  LinExpr rhs = p.expression();
  if (p.peek().kind != Tok::End)
    p.fail("unexpected '" + p.peek().text + "'", p.peek());
  // lhs - rhs (op) 0.
  RatVec a = lhs.coeffs - rhs.coeffs;
  Rational b = rhs.constant - lhs.constant;
  if (op.text == "<=")
    return {a, Relation::LessEq, b};
  if (op.text == ">=")
    return {RatVec(-a), Relation::LessEq, -b};
  if (op.text == "=" || op.text == "==")
    return {a, Relation::Equal, b};
  if (!allow_strict)
    p.fail("strict relation not allowed in updates", op);
  if (op.text == "<")
    return {a, Relation::Less, b};
  if (op.text == ">")
    return {RatVec(-a), Relation::Less, -b};
  p.fail("unknown relation '" + op.text + "'", op);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

/// Splits off the leading keyword; returns the rest and its column offset.
std::string_view keyword(std::string_view line, std::string_view &rest,
                         std::size_t &offset) {
  std::size_t hash = line.find('#');
  if (hash != std::string_view::npos)
    line = line.substr(0, hash);
  std::size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
    ++i;
  std::size_t j = i;
  while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
    ++j;
  rest = line.substr(j);
  offset = j;
  return line.substr(i, j - i);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

Constraint restrict_to_pre(const Constraint &c, std::size_t n) {
  return {RatVec(c.coeffs.head(Eigen::Index(n))), c.relation, c.rhs};
}

} // namespace

SlcLoop parse_loop(std::string_view text) {
  SlcLoop loop;
  bool have_vars = false;
  auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::size_t line_no = ln + 1;
    std::string_view rest;
    std::size_t offset = 0;
    std::string_view kw = keyword(lines[ln], rest, offset);
    if (kw.empty())
      continue;
    const std::size_t kw_col = std::size_t(kw.data() - lines[ln].data()) + 1;
    if (kw == "vars") {
      if (have_vars)
        throw ParseError("duplicate 'vars' line", line_no, kw_col);
      std::size_t i = 0;
      while (i < rest.size()) {
        while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i])))
          ++i;
        std::size_t j = i;
        while (j < rest.size() && !std::isspace(static_cast<unsigned char>(rest[j])))
          ++j;
        if (j > i) {
          std::string name(rest.substr(i, j - i));
          if (!is_identifier(name))
            throw ParseError("bad variable name '" + name + "'", line_no,
                             offset + i + 1);
          for (const auto &existing : loop.var_names)
            if (existing == name)
              throw ParseError("duplicate variable '" + name + "'", line_no,
                               offset + i + 1);
          loop.var_names.push_back(name);
        }
        i = j;
      }
      if (loop.var_names.empty())
        throw ParseError("'vars' needs at least one variable", line_no, kw_col);
      have_vars = true;
    } else if (kw == "domain") {
      std::string_view ignored;
      std::size_t off2 = 0;
      std::string_view value = keyword(rest, ignored, off2);
      if (value == "int" || value == "integer")
        loop.domain = Domain::Integer;
      else if (value == "rat" || value == "rational")
        loop.domain = Domain::Rational;
      else
        throw ParseError("domain must be 'int' or 'rat'", line_no, offset + 2);
    } else if (kw == "guard" || kw == "update") {
      if (!have_vars)
        throw ParseError("'" + std::string(kw) + "' before 'vars'", line_no, kw_col);
      const bool guard = kw == "guard";
      Constraint c = parse_relation(rest, line_no, offset, loop.var_names,
                                    !guard, guard);
      const std::size_t n = loop.dim();
      if (guard) {
        loop.guard.push_back(restrict_to_pre(c, n));
      } else if (c.relation == Relation::Equal) {
        loop.update.push_back({c.coeffs, Relation::LessEq, c.rhs});
        loop.update.push_back({RatVec(-c.coeffs), Relation::LessEq, -c.rhs});
      } else {
        loop.update.push_back(c);
      }
    } else {
      throw ParseError("unknown keyword '" + std::string(kw) + "'", line_no, kw_col);
    }
  }
  if (!have_vars)
    throw ParseError("missing 'vars' line", 1, 1);
  return loop;
}

AffineFunc parse_affine(std::string_view text,
                        const std::vector<std::string> &var_names) {
  std::vector<Token> toks = Lexer(text, 1, 0).run();
  ExprParser p(toks, var_names, 1, false);
  LinExpr e = p.expression();
  if (p.peek().kind != Tok::End)
    p.fail("unexpected '" + p.peek().text + "'", p.peek());
  return {RatVec(e.coeffs.head(Eigen::Index(var_names.size()))), e.constant};
}

RankTuple parse_tuple(std::string_view text,
                      const std::vector<std::string> &var_names, TupleKind kind) {
  RankTuple tuple;
  tuple.kind = kind;
  auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view rest;
    std::size_t offset = 0;
    std::string_view kw = keyword(lines[ln], rest, offset);
    if (kw.empty())
      continue;
    if (kw != "component")
      throw ParseError("expected 'component'", ln + 1,
                       std::size_t(kw.data() - lines[ln].data()) + 1);
    std::vector<Token> toks = Lexer(rest, ln + 1, offset).run();
    ExprParser p(toks, var_names, ln + 1, false);
    LinExpr e = p.expression();
    if (p.peek().kind != Tok::End)
      p.fail("unexpected '" + p.peek().text + "'", p.peek());
    tuple.components.push_back(
        {RatVec(e.coeffs.head(Eigen::Index(var_names.size()))), e.constant});
  }
  return tuple;
}

Polyhedron transition_polyhedron(const SlcLoop &loop) {
  const std::size_t n = loop.dim();
  Polyhedron q(2 * n);
  for (const auto &g : loop.guard) {
    if (g.dim() != n)
      throw DimensionError("guard row of the wrong dimension");
    RatVec a = zeros(2 * n);
    a.head(Eigen::Index(n)) = g.coeffs;
    q.add({a, g.relation, g.rhs});
  }
  for (const auto &u : loop.update) {
    if (u.dim() != 2 * n)
      throw DimensionError("update row of the wrong dimension");
    q.add(u);
  }
  return q;
}

Polyhedron analysis_polyhedron(const SlcLoop &loop) {
  Polyhedron exact = transition_polyhedron(loop);
  if (loop.domain == Domain::Integer)
    return tighten_for_integers(exact);
  Polyhedron q(exact.dim());
  for (Constraint c : exact.rows()) {
    if (c.relation == Relation::Less)
      c.relation = Relation::LessEq;
    q.add(c);
  }
  return q;
}

namespace {

void require_tuple_dim(const Polyhedron &q, const RankTuple &tuple) {
  for (const auto &f : tuple.components)
    if (2 * f.dim() != q.dim())
      throw DimensionError("tuple component over " + std::to_string(f.dim()) +
                           " variables for a transition polyhedron of dimension " +
                           std::to_string(q.dim()));
}

} // namespace

MlrfCheck check_mlrf(const Polyhedron &q, const RankTuple &tuple) {
  require_tuple_dim(q, tuple);
  MlrfCheck out;
  Polyhedron r = q;
  const std::size_t d = tuple.depth();
  for (std::size_t i = 0; i < d; ++i) {
    if (!is_feasible(r)) {
      out.valid = true;
      return out;
    }
    const AffineFunc &f = tuple.components[i];
    NonnegResult dec = implies_nonneg(r, delta(f) - Rational(1));
    if (!dec) {
      out.failed_index = i + 1;
      out.residual = r;
      out.witness = dec.counterexample;
      return out;
    }
    out.certs.push_back(dec.cert);
    if (i + 1 == d) {
      NonnegResult pos = implies_nonneg(r, on_pre_state(f));
      if (!pos) {
        out.failed_index = d;
        out.residual = r;
        out.witness = pos.counterexample;
        return out;
      }
      out.certs.push_back(pos.cert);
      out.valid = true;
      return out;
    }
    r.add_nonpos(on_pre_state(f));
  }
  // Empty tuple.
  Feasibility feas = is_feasible(r);
  if (!feas) {
    out.valid = true;
    return out;
  }
  out.residual = r;
  out.witness = feas.witness;
  return out;
}

MlrfCheck check_mlrf_int(const Polyhedron &q, const RankTuple &tuple,
                         const HullOptions &hull_options) {
  require_tuple_dim(q, tuple);
  MlrfCheck out;
  Polyhedron r = integer_hull(tighten_for_integers(q), hull_options);
  const std::size_t d = tuple.depth();
  for (std::size_t i = 0; i < d; ++i) {
    if (!is_feasible(r)) {
      out.valid = true;
      return out;
    }
    const AffineFunc &f = tuple.components[i];
    NonnegResult dec = implies_nonneg(r, delta(f) - Rational(1));
    if (!dec) {
      out.failed_index = i + 1;
      out.residual = r;
      out.witness = dec.counterexample;
      return out;
    }
    out.certs.push_back(dec.cert);
    if (i + 1 == d) {
      NonnegResult pos = implies_nonneg(r, on_pre_state(f));
      if (!pos) {
        out.failed_index = d;
        out.residual = r;
        out.witness = pos.counterexample;
        return out;
      }
      out.certs.push_back(pos.cert);
      out.valid = true;
      return out;
    }
    r = integer_hull(tighten_for_integers(r.with(negative_constraint(on_pre_state(f)))),
                     hull_options);
  }
  Feasibility feas = is_feasible(r);
  if (!feas) {
    out.valid = true;
    return out;
  }
  out.residual = r;
  out.witness = feas.witness;
  return out;
}

NestedCheck check_nested(const Polyhedron &q, const RankTuple &tuple) {
  require_tuple_dim(q, tuple);
  NestedCheck out;
  const std::size_t d = tuple.depth();
  if (d == 0) {
    Feasibility feas = is_feasible(q);
    out.valid = !feas;
    if (feas)
      out.witness = feas.witness;
    return out;
  }
  NonnegResult last = implies_nonneg(q, on_pre_state(tuple.components[d - 1]));
  if (!last) {
    out.failed_index = 0;
    out.witness = last.counterexample;
    return out;
  }
  out.certs.push_back(last.cert);
  for (std::size_t i = 0; i < d; ++i) {
    AffineFunc cond = delta(tuple.components[i]) - Rational(1);
    if (i > 0)
      cond = cond + on_pre_state(tuple.components[i - 1]);
    NonnegResult r = implies_nonneg(q, cond);
    if (!r) {
      out.failed_index = i + 1;
      out.witness = r.counterexample;
      return out;
    }
    out.certs.push_back(r.cert);
  }
  out.valid = true;
  return out;
}

std::size_t mlrf_rank_index(const RankTuple &tuple, const RatVec &transition) {
  for (std::size_t i = 0; i < tuple.depth(); ++i) {
    const AffineFunc &f = tuple.components[i];
    if (eval_affine(delta(f), transition) < 1)
      return 0;
    Rational value = eval_affine(on_pre_state(f), transition);
    if (value >= 0)
      return i + 1;
  }
  return 0;
}

std::size_t llrf_rank_index(const RankTuple &tuple, const RatVec &transition,
                            bool weak) {
  for (std::size_t i = 0; i < tuple.depth(); ++i) {
    const AffineFunc &f = tuple.components[i];
    Rational dec = eval_affine(delta(f), transition);
    bool decreasing = weak ? dec > 0 : dec >= 1;
    if (decreasing && eval_affine(on_pre_state(f), transition) >= 0)
      return i + 1;
    if (dec < 0)
      return 0;
  }
  return 0;
}

} // namespace mlrf
