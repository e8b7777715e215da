#include "iproof/parser.hpp"

#include <cctype>
#include <map>

#include "iproof/errors.hpp"

namespace iproof {
namespace {

enum class Tok {
  Ident, Hash, LParen, RParen, LBrack, RBrack, Comma, Colon, Dot,
  Arrow, FatArrow, Leq, Bar, Amp, Tilde, KwAll, KwEx, KwBot, KwIn, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      std::string w = s.substr(i, j - i);
      Tok k = Tok::Ident;
      if (w == "all") k = Tok::KwAll;
      else if (w == "ex") k = Tok::KwEx;
      else if (w == "bot") k = Tok::KwBot;
      else if (w == "in") k = Tok::KwIn;
      out.push_back({k, w, i});
      i = j;
      continue;
    }
    auto two = [&](char a, char b) { return c == a && i + 1 < s.size() && s[i + 1] == b; };
    if (two('-', '>')) { out.push_back({Tok::Arrow, "->", i}); i += 2; continue; }
    if (two('=', '>')) { out.push_back({Tok::FatArrow, "=>", i}); i += 2; continue; }
    if (two('<', '=')) { out.push_back({Tok::Leq, "<=", i}); i += 2; continue; }
    switch (c) {
      case '#': out.push_back({Tok::Hash, "#", i}); break;
      case '(': out.push_back({Tok::LParen, "(", i}); break;
      case ')': out.push_back({Tok::RParen, ")", i}); break;
      case '[': out.push_back({Tok::LBrack, "[", i}); break;
      case ']': out.push_back({Tok::RBrack, "]", i}); break;
      case ',': out.push_back({Tok::Comma, ",", i}); break;
      case ':': out.push_back({Tok::Colon, ":", i}); break;
      case '.': out.push_back({Tok::Dot, ".", i}); break;
      case '|': out.push_back({Tok::Bar, "|", i}); break;
      case '&': out.push_back({Tok::Amp, "&", i}); break;
      case '~': out.push_back({Tok::Tilde, "~", i}); break;
      default: throw ParseError(i, "a token, got '" + std::string(1, c) + "'");
    }
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class FormulaParser {
 public:
  FormulaParser(const std::vector<Token>& toks, std::size_t begin, std::size_t end,
                std::map<std::string, std::size_t>& arities)
      : toks_(toks), at_(begin), end_(end), arities_(arities) {}

  FormulaPtr parse() {
    auto f = formula();
    if (at_ != end_) throw ParseError(cur().pos, "end of formula");
    return f;
  }

 private:
  const std::vector<Token>& toks_;
  std::size_t at_, end_;
  std::map<std::string, std::size_t>& arities_;

  const Token& cur() const { return at_ < end_ ? toks_[at_] : toks_[end_]; }
  bool eat(Tok k) {
    if (at_ < end_ && toks_[at_].kind == k) { ++at_; return true; }
    return false;
  }
  void expect(Tok k, const char* what) {
    if (!eat(k)) throw ParseError(cur().pos, what);
  }

  FormulaPtr formula() {
    auto lhs = or_expr();
    if (eat(Tok::Arrow)) return Formula::imp(lhs, formula());
    return lhs;
  }

  FormulaPtr or_expr() {
    auto f = and_expr();
    while (eat(Tok::Bar)) f = Formula::disj(f, and_expr());
    return f;
  }

  FormulaPtr and_expr() {
    auto f = unary();
    while (eat(Tok::Amp)) f = Formula::conj(f, unary());
    return f;
  }

  FormulaPtr unary() {
    if (eat(Tok::Tilde)) return Formula::neg(unary());
    if (cur().kind == Tok::KwAll || cur().kind == Tok::KwEx) {
      bool all = cur().kind == Tok::KwAll;
      ++at_;
      if (cur().kind != Tok::Ident) throw ParseError(cur().pos, "a bound variable");
      std::string var = cur().text;
      ++at_;
      expect(Tok::Dot, "'.' after the bound variable");
      auto body = unary();
      return all ? Formula::forall(var, body) : Formula::exists(var, body);
    }
    return prim();
  }

  FormulaPtr prim() {
    if (eat(Tok::KwBot)) return Formula::bot();
    if (eat(Tok::LParen)) {
      auto f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (cur().kind != Tok::Ident) throw ParseError(cur().pos, "a formula");
    std::string pred = cur().text;
    ++at_;
    std::vector<Term> args;
    if (eat(Tok::LParen)) {
      args.push_back(term());
      while (eat(Tok::Comma)) args.push_back(term());
      expect(Tok::RParen, "')'");
    }
    auto [it, fresh] = arities_.emplace(pred, args.size());
    if (!fresh && it->second != args.size()) throw ArityError(pred, it->second, args.size());
    return Formula::atom(pred, std::move(args));
  }

  Term term() {
    if (eat(Tok::Hash)) {
      if (cur().kind != Tok::Ident) throw ParseError(cur().pos, "a parameter name after '#'");
      std::string n = cur().text;
      ++at_;
      return Term::param(n);
    }
    if (cur().kind != Tok::Ident) throw ParseError(cur().pos, "a term");
    std::string n = cur().text;
    ++at_;
    return Term::var(n);
  }
};

FormulaPtr parse_range(const std::vector<Token>& toks, std::size_t b, std::size_t e,
                       std::map<std::string, std::size_t>& arities) {
  return FormulaParser(toks, b, e, arities).parse();
}

void require_closed(const FormulaPtr& f) {
  if (!parameter_closed(f)) {
    // Re-scan for the offending variable name to report it.
    struct Scan {
      static bool run(const FormulaPtr& g, std::set<std::string>& bound, std::string& out) {
        switch (g->kind) {
          case Formula::Kind::Atom:
            for (const auto& t : g->args)
              if (!t.is_param() && !bound.count(t.name)) { out = t.name; return true; }
            return false;
          case Formula::Kind::Forall:
          case Formula::Kind::Exists: {
            bool fresh = bound.insert(g->head).second;
            bool hit = run(g->lhs, bound, out);
            if (fresh) bound.erase(g->head);
            return hit;
          }
          default:
            if (g->lhs && run(g->lhs, bound, out)) return true;
            if (g->rhs && run(g->rhs, bound, out)) return true;
            return false;
        }
      }
    };
    std::set<std::string> bound;
    std::string var = "?";
    Scan::run(f, bound, var);
    throw FreeVariableError(var);
  }
}

// Splits [b, e) at depth-0 commas; returns segment boundaries.
std::vector<std::pair<std::size_t, std::size_t>> split_commas(const std::vector<Token>& toks,
                                                              std::size_t b, std::size_t e) {
  std::vector<std::pair<std::size_t, std::size_t>> parts;
  int depth = 0;
  std::size_t start = b;
  for (std::size_t i = b; i < e; ++i) {
    switch (toks[i].kind) {
      case Tok::LParen:
      case Tok::LBrack: ++depth; break;
      case Tok::RParen:
      case Tok::RBrack: --depth; break;
      case Tok::Comma:
        if (depth == 0) { parts.emplace_back(start, i); start = i + 1; }
        break;
      default: break;
    }
  }
  parts.emplace_back(start, e);
  return parts;
}

struct NestedParser {
  const std::vector<Token>& toks;
  std::map<std::string, std::size_t>& arities;

  bool try_flist(std::size_t b, std::size_t e, std::vector<FormulaPtr>* out) {
    std::vector<FormulaPtr> fs;
    if (b != e) {
      for (auto [x, y] : split_commas(toks, b, e)) {
        if (x == y) return false;
        try {
          fs.push_back(parse_range(toks, x, y, arities));
        } catch (const ParseError&) {
          return false;
        }
      }
    }
    if (out) *out = std::move(fs);
    return true;
  }

  NestedSequent parse(std::size_t b, std::size_t e) {
    // Children begin at the first depth-0 comma directly followed by '['.
    int depth = 0;
    std::size_t head_end = e;
    std::vector<std::pair<std::size_t, std::size_t>> children;
    for (std::size_t i = b; i < e; ++i) {
      switch (toks[i].kind) {
        case Tok::LParen:
        case Tok::LBrack: ++depth; break;
        case Tok::RParen:
        case Tok::RBrack: --depth; break;
        case Tok::Comma:
          if (depth == 0 && i + 1 < e && toks[i + 1].kind == Tok::LBrack) {
            head_end = i;
            goto found;
          }
          break;
        default: break;
      }
    }
  found:
    if (head_end != e) {
      std::size_t i = head_end;
      while (i < e) {
        if (toks[i].kind != Tok::Comma) throw ParseError(toks[i].pos, "',' before '['");
        ++i;
        if (i >= e || toks[i].kind != Tok::LBrack) throw ParseError(toks[i < e ? i : e - 1].pos, "'['");
        std::size_t j = i + 1;
        int d = 1;
        while (j < e && d > 0) {
          if (toks[j].kind == Tok::LBrack) ++d;
          else if (toks[j].kind == Tok::RBrack) --d;
          ++j;
        }
        if (d != 0) throw ParseError(toks[e - 1].pos, "']'");
        children.emplace_back(i + 1, j - 1);
        i = j;
      }
    }
    // Candidate separators: depth-0 arrows in [b, head_end), tried rightmost
    // first so antecedent implications need no parentheses.
    std::vector<std::size_t> arrows;
    depth = 0;
    for (std::size_t i = b; i < head_end; ++i) {
      switch (toks[i].kind) {
        case Tok::LParen:
        case Tok::LBrack: ++depth; break;
        case Tok::RParen:
        case Tok::RBrack: --depth; break;
        case Tok::Arrow:
          if (depth == 0) arrows.push_back(i);
          break;
        default: break;
      }
    }
    NestedSequent out;
    bool done = false;
    for (auto it = arrows.rbegin(); it != arrows.rend() && !done; ++it) {
      std::vector<FormulaPtr> l, r;
      auto saved = arities;
      if (try_flist(b, *it, &l) && try_flist(*it + 1, head_end, &r)) {
        out.ante = std::move(l);
        out.succ = std::move(r);
        done = true;
      } else {
        arities = saved;
      }
    }
    if (!done) throw ParseError(toks[b < head_end ? b : (b ? b - 1 : 0)].pos, "'->' separating two formula lists");
    for (auto [x, y] : children) out.children.push_back(parse(x, y));
    return out;
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  auto toks = tokenize(text);
  std::map<std::string, std::size_t> arities;
  return parse_range(toks, 0, toks.size() - 1, arities);
}

LabelledSequent parse_labelled(const std::string& text) {
  auto toks = tokenize(text);
  std::size_t end = toks.size() - 1;
  std::map<std::string, std::size_t> arities;
  // Exactly one depth-0 "=>".
  int depth = 0;
  std::size_t sep = end;
  for (std::size_t i = 0; i < end; ++i) {
    if (toks[i].kind == Tok::LParen || toks[i].kind == Tok::LBrack) ++depth;
    else if (toks[i].kind == Tok::RParen || toks[i].kind == Tok::RBrack) --depth;
    else if (toks[i].kind == Tok::FatArrow && depth == 0) {
      if (sep != end) throw ParseError(toks[i].pos, "a single '=>'");
      sep = i;
    }
  }
  if (sep == end) throw ParseError(toks[end].pos, "'=>'");
  LabelledSequent s;
  if (sep != 0) {
    for (auto [x, y] : split_commas(toks, 0, sep)) {
      if (x == y) throw ParseError(toks[x].pos, "a relational atom or labelled formula");
      if (toks[x].kind == Tok::Hash) {
        if (x + 1 >= y || toks[x + 1].kind != Tok::Ident) throw ParseError(toks[x].pos, "a parameter");
        std::string param = toks[x + 1].text;
        std::size_t i = x + 2;
        if (i >= y || toks[i].kind != Tok::KwIn) throw ParseError(toks[x].pos, "'in'");
        ++i;
        if (i >= y || toks[i].kind != Tok::Ident || toks[i].text != "D") throw ParseError(toks[x].pos, "'D('");
        ++i;
        if (i >= y || toks[i].kind != Tok::LParen) throw ParseError(toks[x].pos, "'D('");
        ++i;
        if (i >= y || toks[i].kind != Tok::Ident) throw ParseError(toks[x].pos, "a label");
        std::string at = toks[i].text;
        ++i;
        if (i >= y || toks[i].kind != Tok::RParen || i + 1 != y) throw ParseError(toks[x].pos, "')'");
        s.rel.push_back(RelAtom::dom(param, at));
      } else if (toks[x].kind == Tok::Ident && x + 1 < y && toks[x + 1].kind == Tok::Leq) {
        if (x + 2 >= y || toks[x + 2].kind != Tok::Ident || x + 3 != y)
          throw ParseError(toks[x].pos, "LABEL '<=' LABEL");
        s.rel.push_back(RelAtom::le(toks[x].text, toks[x + 2].text));
      } else if (toks[x].kind == Tok::Ident && x + 1 < y && toks[x + 1].kind == Tok::Colon) {
        auto f = parse_range(toks, x + 2, y, arities);
        require_closed(f);
        s.ante.emplace_back(toks[x].text, f);
      } else {
        throw ParseError(toks[x].pos, "a relational atom or labelled formula");
      }
    }
  }
  if (sep + 1 != end) {
    for (auto [x, y] : split_commas(toks, sep + 1, end)) {
      if (x == y) throw ParseError(toks[x < end ? x : end].pos, "a labelled formula");
      if (toks[x].kind != Tok::Ident || x + 1 >= y || toks[x + 1].kind != Tok::Colon)
        throw ParseError(toks[x].pos, "LABEL ':' formula");
      auto f = parse_range(toks, x + 2, y, arities);
      require_closed(f);
      s.succ.emplace_back(toks[x].text, f);
    }
  }
  return s;
}

NestedSequent parse_nested(const std::string& text) {
  auto toks = tokenize(text);
  std::map<std::string, std::size_t> arities;
  NestedParser p{toks, arities};
  auto s = p.parse(0, toks.size() - 1);
  struct Close {
    static void run(const NestedSequent& n) {
      for (const auto& f : n.ante) require_closed(f);
      for (const auto& f : n.succ) require_closed(f);
      for (const auto& c : n.children) run(c);
    }
  };
  Close::run(s);
  return s;
}

}  // namespace iproof
