#include "bllp/syntax.hpp"

#include <cctype>

namespace bllp {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '%'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '\''; }

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  ResourcePoly poly() {
    ResourcePoly p = poly_product();
    while (accept("+")) p = p + poly_product();
    return p;
  }

  Formula formula() {
    Formula a = tensor_level();
    if (accept_word("par")) return Formula::par(a, formula());
    if (accept("-[")) {
      VarId x = "_";
      std::size_t save = pos_;
      if (peek_ident()) {
        VarId v = ident();
        if (accept("<"))
          x = v;
        else
          pos_ = save;
      }
      ResourcePoly p = poly();
      expect("]->");
      Formula m = formula();
      return Formula::arrow(a, x, p, m);
    }
    return a;
  }

  LabelledFormula labelled() {
    expect("<");
    Formula a = formula();
    expect(">");
    expect("[");
    VarId x;
    std::size_t save = pos_;
    if (peek_ident()) {
      VarId v = ident();
      if (accept("<"))
        x = v;
      else
        pos_ = save;
    }
    ResourcePoly p = poly();
    expect("]");
    return x.empty() ? bllp::labelled(a, p) : bllp::labelled(a, x, p);
  }

  Term term() {
    skip();
    if (accept("\\")) {
      std::vector<LamVarId> xs;
      do xs.push_back(ident());
      while (peek_ident());
      expect(".");
      Term body = term();
      for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = Term::lam(*it, body);
      return body;
    }
    if (accept_word("mu")) {
      MuVarId a = ident();
      expect(".");
      return Term::mu(a, term());
    }
    if (accept("[")) {
      MuVarId a = ident();
      expect("]");
      return Term::name(a, term());
    }
    Term t = atom_term();
    while (true) {
      skip();
      if (at_end()) break;
      char c = s_[pos_];
      if (c == '(' || (ident_start(c) && !peek_word("mu"))) {
        t = Term::app(t, atom_term());
      } else if (c == '\\' || c == '[' || peek_word("mu")) {
        t = Term::app(t, term());
        break;
      } else {
        break;
      }
    }
    return t;
  }

  void finish() {
    skip();
    if (!at_end()) fail("unexpected trailing input");
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() { return pos_ >= s_.size(); }

  bool accept(const std::string& tok) {
    skip();
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& tok) {
    if (!accept(tok)) fail("expected '" + tok + "'");
  }

  bool peek_word(const std::string& w) {
    skip();
    if (s_.compare(pos_, w.size(), w) != 0) return false;
    std::size_t end = pos_ + w.size();
    return end >= s_.size() || !ident_char(s_[end]);
  }
  bool accept_word(const std::string& w) {
    if (!peek_word(w)) return false;
    pos_ += w.size();
    return true;
  }

  bool peek_ident() {
    skip();
    return !at_end() && ident_start(s_[pos_]);
  }
  std::string ident() {
    if (!peek_ident()) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  bool peek_number() {
    skip();
    return !at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  Natural number() {
    if (!peek_number()) fail("expected number");
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Natural(s_.substr(start, pos_ - start));
  }

  ResourcePoly poly_product() {
    ResourcePoly p = poly_factor();
    while (accept("*")) p = p * poly_factor();
    return p;
  }

  ResourcePoly poly_factor() {
    if (peek_number()) return ResourcePoly::constant(number());
    if (accept("(")) {
      ResourcePoly p = poly();
      expect(")");
      return p;
    }
    if (accept_word("bin")) {
      expect("(");
      VarId x = ident();
      expect(",");
      Natural n = number();
      expect(")");
      return ResourcePoly::binomial(x, n.convert_to<unsigned>());
    }
    if (accept_word("sum")) {
      expect("(");
      VarId z = ident();
      expect("<");
      ResourcePoly bound = poly();
      expect(",");
      ResourcePoly body = poly();
      expect(")");
      return bounded_sum(z, bound, body);
    }
    return ResourcePoly::var(ident());
  }

  Formula tensor_level() {
    Formula a = prefix();
    if (accept("*")) return Formula::tensor(a, tensor_level());
    return a;
  }

  Formula prefix() {
    skip();
    if (accept("!") || accept("?")) {
      bool bang = s_[pos_ - 1] == '!';
      expect("{");
      VarId x = ident();
      expect("<");
      ResourcePoly p = poly();
      expect("}");
      Formula body = prefix();
      return bang ? Formula::bang(x, p, body) : Formula::whynot(x, p, body);
    }
    if (accept("~")) return Formula::neg_atom(ident());
    if (accept("(")) {
      Formula a = formula();
      expect(")");
      return a;
    }
    if (peek_number()) {
      if (number() != 1) fail("only the unit 1 is a numeric formula");
      return Formula::one();
    }
    if (accept_word("bot")) return Formula::bottom();
    return Formula::atom(ident());
  }

  Term atom_term() {
    if (accept("(")) {
      Term t = term();
      expect(")");
      return t;
    }
    if (peek_word("mu")) fail("unexpected 'mu'");
    return Term::var(ident());
  }
};

template <class T, class F>
T run(const std::string& s, F f) {
  Parser p(s);
  try {
    T out = f(p);
    p.finish();
    return out;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace

ResourcePoly parse_poly(const std::string& s) {
  return run<ResourcePoly>(s, [](Parser& p) { return p.poly(); });
}

Formula parse_formula(const std::string& s) {
  return run<Formula>(s, [](Parser& p) { return p.formula(); });
}

LabelledFormula parse_labelled(const std::string& s) {
  return run<LabelledFormula>(s, [](Parser& p) { return p.labelled(); });
}

Term parse_term(const std::string& s) {
  return run<Term>(s, [](Parser& p) { return p.term(); });
}

}  // namespace bllp
