// Expression language for cycle classes and K-classes.
//
// Grammar:
//   expr   := [ "-" ] term { ("+"|"-") term }
//   term   := factor { "*" factor }
//   factor := atom [ "^" nat ]
//   atom   := int | "h" nat | "O" "(" ints ")" | "L" "(" ints ")"
//           | "OL" "(" ints ")" | ident "(" args ")" | "(" expr ")"
// Registry idents: td, ch, chh, psi, theta, r, T, Tc, S, Tp.
// Operators are left-associative; ^ binds tightest. Offsets are bytes.
#pragma once

#include <cctype>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chern/variety.hpp"

namespace chern {
namespace expr {

struct ParseError : std::runtime_error {
  ParseError(size_t offset, const std::string& expected, const std::string& got)
      : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": expected " +
                           expected + ", got " + got),
        offset(offset),
        expected(expected) {}
  size_t offset;
  std::string expected;
};

struct ElabError : std::runtime_error {
  ElabError(size_t offset, const std::string& what)
      : std::runtime_error("error at offset " + std::to_string(offset) + ": " + what),
        offset(offset) {}
  size_t offset;
};

enum class Kind { Int, Hyper, LineBundle, Cycle, KCycle, Add, Sub, Mul, Pow, Call, Neg };

struct Node {
  Kind kind;
  size_t offset = 0;
  long value = 0;            // Int: the literal; Hyper: 1-based index; Pow: exponent
  std::vector<int> tuple;    // LineBundle / Cycle / KCycle
  std::string fn;            // Call
  std::vector<Node> args;    // Call arguments or operator children

  bool operator==(const Node& o) const {
    return kind == o.kind && value == o.value && tuple == o.tuple && fn == o.fn && args == o.args;
  }
};

// ---------------------------------------------------------------------------
// Lexer.

enum class Tok { Int, Ident, Plus, Minus, Star, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  size_t offset;
  std::string text;
  long value = 0;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i;
      long v = 0;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        if (v > 100000000) throw ParseError(start, "a smaller integer", src.substr(start, i - start));
        v = v * 10 + (src[i] - '0');
        ++i;
      }
      out.push_back({Tok::Int, start, src.substr(start, i - start), v});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < src.size() && std::isalpha(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::Ident, start, src.substr(start, i - start)});
      continue;
    }
    Tok t;
    switch (c) {
      case '+': t = Tok::Plus; break;
      case '-': t = Tok::Minus; break;
      case '*': t = Tok::Star; break;
      case '^': t = Tok::Caret; break;
      case '(': t = Tok::LParen; break;
      case ')': t = Tok::RParen; break;
      case ',': t = Tok::Comma; break;
      default:
        throw ParseError(i, "an operator, parenthesis or operand", std::string(1, c));
    }
    out.push_back({t, i, std::string(1, c)});
    ++i;
  }
  out.push_back({Tok::End, src.size(), "<end>"});
  return out;
}

// ---------------------------------------------------------------------------
// Parser (recursive descent).

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  Node parse() {
    Node e = expr();
    if (cur().kind != Tok::End) throw ParseError(cur().offset, "end of input", cur().text);
    return e;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }
  bool accept(Tok t) {
    if (cur().kind == t) {
      ++pos_;
      return true;
    }
    return false;
  }
  Token expect(Tok t, const char* what) {
    if (cur().kind != t) throw ParseError(cur().offset, what, cur().text);
    return advance();
  }

  Node expr() {
    Node e;
    if (cur().kind == Tok::Minus) {
      size_t off = advance().offset;
      Node inner = term();
      e = Node{Kind::Neg, off};
      e.args.push_back(std::move(inner));
    } else {
      e = term();
    }
    while (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
      const Token op = advance();
      Node rhs = term();
      Node parent{op.kind == Tok::Plus ? Kind::Add : Kind::Sub, op.offset};
      parent.args.push_back(std::move(e));
      parent.args.push_back(std::move(rhs));
      e = std::move(parent);
    }
    return e;
  }

  Node term() {
    Node e = factor();
    while (cur().kind == Tok::Star) {
      const Token op = advance();
      Node rhs = factor();
      Node parent{Kind::Mul, op.offset};
      parent.args.push_back(std::move(e));
      parent.args.push_back(std::move(rhs));
      e = std::move(parent);
    }
    return e;
  }

  Node factor() {
    Node e = atom();
    if (cur().kind == Tok::Caret) {
      const Token op = advance();
      const Token n = expect(Tok::Int, "a nonnegative integer exponent");
      Node parent{Kind::Pow, op.offset};
      parent.value = n.value;
      parent.args.push_back(std::move(e));
      e = std::move(parent);
    }
    return e;
  }

  std::vector<int> int_list() {
    std::vector<int> out;
    expect(Tok::LParen, "'('");
    if (cur().kind != Tok::RParen) {
      for (;;) {
        bool neg = accept(Tok::Minus);
        const Token v = expect(Tok::Int, "an integer");
        out.push_back(static_cast<int>(neg ? -v.value : v.value));
        if (!accept(Tok::Comma)) break;
      }
    }
    expect(Tok::RParen, "')' or ','");
    return out;
  }

  Node atom() {
    const Token t = cur();
    if (t.kind == Tok::Int) {
      advance();
      return Node{Kind::Int, t.offset, t.value};
    }
    if (t.kind == Tok::LParen) {
      advance();
      Node e = expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (t.kind == Tok::Ident) {
      advance();
      if (t.text == "h") {
        const Token n = expect(Tok::Int, "a factor index after 'h'");
        Node e{Kind::Hyper, t.offset};
        e.value = n.value;
        return e;
      }
      if (t.text == "O" || t.text == "L" || t.text == "OL") {
        Node e{t.text == "O" ? Kind::LineBundle : (t.text == "L" ? Kind::Cycle : Kind::KCycle),
               t.offset};
        e.tuple = int_list();
        return e;
      }
      // registry function call
      Node e{Kind::Call, t.offset};
      e.fn = t.text;
      expect(Tok::LParen, "'(' after function name");
      if (cur().kind != Tok::RParen) {
        for (;;) {
          e.args.push_back(expr());
          if (!accept(Tok::Comma)) break;
        }
      }
      expect(Tok::RParen, "')' or ','");
      return e;
    }
    throw ParseError(t.offset, "an operand", t.text);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

inline Node parse(const std::string& src) {
  if (src.empty()) throw ParseError(0, "a non-empty expression", "<empty>");
  return Parser(src).parse();
}

// ---------------------------------------------------------------------------
// Elaboration: context and arity checking against a bound variety.

enum class Ctx { Chow, K, Bundle, Scalar };

inline const char* ctx_name(Ctx c) {
  switch (c) {
    case Ctx::Chow: return "Chow";
    case Ctx::K: return "K";
    case Ctx::Bundle: return "bundle";
    case Ctx::Scalar: return "scalar";
  }
  return "?";
}

struct FnSig {
  const char* name;
  int arity;
  Ctx arg_ctx;        // context of the last argument
  bool leading_int;   // first argument must be an integer scalar
  Ctx result_ctx;
};

inline const std::vector<FnSig>& registry() {
  static const std::vector<FnSig> fns = {
      {"td", 1, Ctx::Bundle, false, Ctx::Chow},
      {"ch", 1, Ctx::K, false, Ctx::Chow},
      {"chh", 1, Ctx::K, false, Ctx::Chow},  // graded list; root only
      {"psi", 2, Ctx::K, true, Ctx::K},
      {"theta", 2, Ctx::Bundle, true, Ctx::K},
      {"r", 2, Ctx::Bundle, true, Ctx::Chow},
      {"T", 2, Ctx::Chow, true, Ctx::Chow},
      {"Tc", 2, Ctx::Chow, true, Ctx::Chow},
      {"S", 1, Ctx::Chow, false, Ctx::Chow},
      {"Tp", 1, Ctx::Chow, false, Ctx::Chow},
  };
  return fns;
}

inline const FnSig* find_fn(const std::string& name) {
  for (const auto& f : registry())
    if (name == f.name) return &f;
  return nullptr;
}

// Validates arity, index bounds and context use; throws ElabError.
inline void elaborate(const Node& e, const ModelVariety& X, Ctx ctx) {
  const int k = X.factors();
  switch (e.kind) {
    case Kind::Int:
      return;
    case Kind::Hyper:
      if (ctx != Ctx::Chow) throw ElabError(e.offset, "hyperplane class in non-Chow context");
      if (e.value < 1 || e.value > k)
        throw ElabError(e.offset, "h" + std::to_string(e.value) + " out of range on " + X.name());
      return;
    case Kind::LineBundle:
      if (ctx != Ctx::K && ctx != Ctx::Bundle)
        throw ElabError(e.offset, "O(...) in non-K context");
      if (static_cast<int>(e.tuple.size()) != k)
        throw ElabError(e.offset, "O(...) needs " + std::to_string(k) + " twists on " + X.name());
      return;
    case Kind::Cycle:
      if (ctx != Ctx::Chow) throw ElabError(e.offset, "L(...) in non-Chow context");
      if (static_cast<int>(e.tuple.size()) != k)
        throw ElabError(e.offset, "L(...) needs " + std::to_string(k) + " entries on " + X.name());
      for (int j = 0; j < k; ++j)
        if (e.tuple[static_cast<size_t>(j)] < 0 || e.tuple[static_cast<size_t>(j)] > X.factor_dim(j))
          throw ElabError(e.offset, "L(...) entry out of range on " + X.name());
      return;
    case Kind::KCycle:
      if (ctx != Ctx::K) throw ElabError(e.offset, "OL(...) in non-K context");
      if (static_cast<int>(e.tuple.size()) != k)
        throw ElabError(e.offset, "OL(...) needs " + std::to_string(k) + " entries on " + X.name());
      for (int j = 0; j < k; ++j)
        if (e.tuple[static_cast<size_t>(j)] < 0 || e.tuple[static_cast<size_t>(j)] > X.factor_dim(j))
          throw ElabError(e.offset, "OL(...) entry out of range on " + X.name());
      return;
    case Kind::Neg:
      elaborate(e.args[0], X, ctx);
      return;
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
      elaborate(e.args[0], X, ctx);
      elaborate(e.args[1], X, ctx);
      return;
    case Kind::Pow:
      elaborate(e.args[0], X, ctx);
      return;
    case Kind::Call: {
      const FnSig* sig = find_fn(e.fn);
      if (!sig) throw ElabError(e.offset, "unknown function '" + e.fn + "'");
      if (static_cast<int>(e.args.size()) != sig->arity)
        throw ElabError(e.offset, "'" + e.fn + "' expects " + std::to_string(sig->arity) +
                                      " argument(s)");
      if (ctx == Ctx::Scalar)
        throw ElabError(e.offset, "expected an integer argument, got a call to '" + e.fn + "'");
      if (sig->result_ctx != ctx)
        throw ElabError(e.offset, "'" + e.fn + "' used in " + std::string(ctx_name(ctx)) +
                                      " context but produces a " + ctx_name(sig->result_ctx) +
                                      " value");
      size_t first_elem = 0;
      if (sig->leading_int) {
        elaborate(e.args[0], X, Ctx::Scalar);
        first_elem = 1;
      }
      for (size_t a = first_elem; a < e.args.size(); ++a)
        elaborate(e.args[a], X, sig->arg_ctx);
      return;
    }
  }
}

// parse + elaborate against a bound variety.
inline Node parse_expr(const std::string& src, const ModelVariety& X, Ctx ctx) {
  Node n = parse(src);
  elaborate(n, X, ctx);
  return n;
}

// Canonical rendering; parse(render(e)) == e structurally.
inline std::string render(const Node& e) {
  auto paren = [](const std::string& s) { return "(" + s + ")"; };
  switch (e.kind) {
    case Kind::Int:
      return std::to_string(e.value);
    case Kind::Hyper:
      return "h" + std::to_string(e.value);
    case Kind::LineBundle:
    case Kind::Cycle:
    case Kind::KCycle: {
      std::ostringstream os;
      os << (e.kind == Kind::LineBundle ? "O" : (e.kind == Kind::Cycle ? "L" : "OL")) << "(";
      for (size_t j = 0; j < e.tuple.size(); ++j) {
        if (j) os << ",";
        os << e.tuple[j];
      }
      os << ")";
      return os.str();
    }
    case Kind::Neg:
      return "-" + ((e.args[0].kind == Kind::Add || e.args[0].kind == Kind::Sub)
                        ? paren(render(e.args[0]))
                        : render(e.args[0]));
    case Kind::Add:
    case Kind::Sub: {
      const char* op = e.kind == Kind::Add ? " + " : " - ";
      std::string lhs = render(e.args[0]);
      std::string rhs = render(e.args[1]);
      // operators are left-associative: a compound right operand needs parens
      if (e.args[1].kind == Kind::Add || e.args[1].kind == Kind::Sub ||
          e.args[1].kind == Kind::Neg)
        rhs = paren(rhs);
      if (e.args[0].kind == Kind::Neg) lhs = paren(lhs);
      return lhs + op + rhs;
    }
    case Kind::Mul: {
      auto wrap = [&](const Node& n, bool rhs) {
        std::string s = render(n);
        if (n.kind == Kind::Add || n.kind == Kind::Sub || n.kind == Kind::Neg ||
            (rhs && n.kind == Kind::Mul))
          return paren(s);
        return s;
      };
      return wrap(e.args[0], false) + "*" + wrap(e.args[1], true);
    }
    case Kind::Pow: {
      std::string base = render(e.args[0]);
      if (e.args[0].kind != Kind::Int && e.args[0].kind != Kind::Hyper &&
          e.args[0].kind != Kind::LineBundle && e.args[0].kind != Kind::Cycle &&
          e.args[0].kind != Kind::KCycle && e.args[0].kind != Kind::Call)
        base = paren(base);
      return base + "^" + std::to_string(e.value);
    }
    case Kind::Call: {
      std::ostringstream os;
      os << e.fn << "(";
      for (size_t a = 0; a < e.args.size(); ++a) {
        if (a) os << ", ";
        os << render(e.args[a]);
      }
      os << ")";
      return os.str();
    }
  }
  return "?";
}

}  // namespace expr
}  // namespace chern
