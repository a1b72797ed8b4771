#include "crdc/term.hpp"

#include <cctype>
#include <sstream>

namespace crdc {

std::string domain_name(DomainTag t) {
  switch (t) {
    case DomainTag::Smooth: return "smooth";
    case DomainTag::PolyOverRationals: return "rational";
    case DomainTag::PolyOverIntegers: return "integer";
  }
  return "?";
}

struct TermFactory {
  static std::shared_ptr<Term> make() { return std::shared_ptr<Term>(new Term()); }
};

namespace {

std::shared_ptr<Term> node(TermOp op, Dim dom, Dim cod) {
  auto t = TermFactory::make();
  t->op = op;
  t->dom = dom;
  t->cod = cod;
  return t;
}

}  // namespace

TermPtr t_id(Dim n) {
  if (n < 0) throw TypeError("negative dimension in id");
  return node(TermOp::Id, n, n);
}

TermPtr t_proj(Dim src, Dim lo, Dim len) {
  if (src < 0 || lo < 0 || len < 0 || lo + len > src)
    throw TypeError("projection slice out of range");
  auto t = node(TermOp::Proj, src, len);
  t->proj_lo = lo;
  return t;
}

TermPtr t_pair(std::vector<TermPtr> parts) {
  if (parts.empty()) throw TypeError("pair needs at least one part");
  Dim dom = parts[0]->dom;
  Dim cod = 0;
  for (const auto& p : parts) {
    if (p->dom != dom) throw TypeError("pair parts disagree on domain");
    cod += p->cod;
  }
  auto t = node(TermOp::Pair, dom, cod);
  t->kids = std::move(parts);
  return t;
}

TermPtr t_comp(TermPtr outer, TermPtr inner) {
  if (inner->cod != outer->dom)
    throw TypeError("composition mismatch: inner cod " + std::to_string(inner->cod) +
                    " != outer dom " + std::to_string(outer->dom));
  auto t = node(TermOp::Comp, inner->dom, outer->cod);
  t->kids = {std::move(outer), std::move(inner)};
  return t;
}

TermPtr t_zero(Dim dom, Dim cod) {
  if (dom < 0 || cod < 0) throw TypeError("negative dimension in zero");
  return node(TermOp::Zero, dom, cod);
}

TermPtr t_add(TermPtr f, TermPtr g) {
  if (f->dom != g->dom || f->cod != g->cod) throw TypeError("sum of unequal signatures");
  auto t = node(TermOp::Add, f->dom, f->cod);
  t->kids = {std::move(f), std::move(g)};
  return t;
}

TermPtr t_neg(TermPtr f) {
  auto t = node(TermOp::Neg, f->dom, f->cod);
  t->kids = {std::move(f)};
  return t;
}

TermPtr t_linear(LinMap a) {
  auto t = node(TermOp::Linear, a.cols(), a.rows());
  t->realc = a.real_entries();
  t->mat = std::move(a);
  return t;
}

TermPtr t_const(Vector v) {
  auto t = node(TermOp::ConstVec, 0, v.dim());
  if (v.kind() == Kind::Rational) {
    t->realc.reserve(static_cast<size_t>(v.dim()));
    for (const Rat& q : v.rats()) t->realc.push_back(rat_to_double(q));
  }
  t->cvec = std::move(v);
  return t;
}

TermPtr t_one(Dim cod) {
  if (cod < 0) throw TypeError("negative dimension in one");
  return node(TermOp::One, 0, cod);
}

TermPtr t_mul() { return node(TermOp::Mul, 2, 1); }
TermPtr t_sin() { return node(TermOp::Sin, 1, 1); }
TermPtr t_cos() { return node(TermOp::Cos, 1, 1); }
TermPtr t_exp() { return node(TermOp::Exp, 1, 1); }

TermPtr t_one_map(Dim dom, Dim cod) { return t_comp(t_one(cod), t_zero(dom, 0)); }

TermPtr t_const_map(Dim dom, Vector v) { return t_comp(t_const(std::move(v)), t_zero(dom, 0)); }

namespace {

void typecheck_rec(const TermPtr& t, const std::string& path) {
  auto fail = [&](const std::string& msg) { throw TypeError(msg, path); };
  switch (t->op) {
    case TermOp::Id:
      if (t->dom != t->cod || t->dom < 0) fail("id must have equal non-negative dims");
      break;
    case TermOp::Proj:
      if (t->proj_lo < 0 || t->cod < 0 || t->proj_lo + t->cod > t->dom)
        fail("projection slice out of range");
      break;
    case TermOp::Pair: {
      if (t->kids.empty()) fail("empty pair");
      Dim cod = 0;
      for (size_t i = 0; i < t->kids.size(); ++i) {
        const auto& k = t->kids[i];
        if (k->dom != t->dom) fail("pair part domain mismatch");
        cod += k->cod;
        typecheck_rec(k, path + ".pair[" + std::to_string(i) + "]");
      }
      if (cod != t->cod) fail("pair codomain mismatch");
      break;
    }
    case TermOp::Comp:
      if (t->kids.size() != 2) fail("comp arity");
      if (t->inner()->cod != t->outer()->dom)
        fail("composition mismatch: inner cod " + std::to_string(t->inner()->cod) +
             " != outer dom " + std::to_string(t->outer()->dom));
      if (t->dom != t->inner()->dom || t->cod != t->outer()->cod) fail("comp signature mismatch");
      typecheck_rec(t->outer(), path + ".comp.outer");
      typecheck_rec(t->inner(), path + ".comp.inner");
      break;
    case TermOp::Zero:
      if (t->dom < 0 || t->cod < 0) fail("negative dims in zero");
      break;
    case TermOp::Add:
      if (t->kids.size() != 2) fail("add arity");
      for (int i = 0; i < 2; ++i) {
        if (t->kids[static_cast<size_t>(i)]->dom != t->dom ||
            t->kids[static_cast<size_t>(i)]->cod != t->cod)
          fail("add signature mismatch");
        typecheck_rec(t->kids[static_cast<size_t>(i)], path + ".add[" + std::to_string(i) + "]");
      }
      break;
    case TermOp::Neg:
      if (t->kids.size() != 1 || t->kids[0]->dom != t->dom || t->kids[0]->cod != t->cod)
        fail("neg signature mismatch");
      typecheck_rec(t->kids[0], path + ".neg");
      break;
    case TermOp::Linear:
      if (t->mat.cols() != t->dom || t->mat.rows() != t->cod) fail("linear matrix shape mismatch");
      break;
    case TermOp::ConstVec:
      if (t->dom != 0 || t->cvec.dim() != t->cod) fail("const signature mismatch");
      break;
    case TermOp::One:
      if (t->dom != 0 || t->cod < 0) fail("one signature mismatch");
      break;
    case TermOp::Mul:
      if (t->dom != 2 || t->cod != 1) fail("mul signature mismatch");
      break;
    case TermOp::Sin:
    case TermOp::Cos:
    case TermOp::Exp:
      if (t->dom != 1 || t->cod != 1) fail("smooth primitive signature mismatch");
      break;
  }
}

}  // namespace

std::pair<Dim, Dim> typecheck(const TermPtr& t) {
  typecheck_rec(t, "root");
  return {t->dom, t->cod};
}

void check_domain(const TermPtr& t, DomainTag tag) {
  switch (t->op) {
    case TermOp::Sin:
    case TermOp::Cos:
    case TermOp::Exp:
      if (is_poly_domain(tag))
        throw DomainError("smooth primitive not allowed in " + domain_name(tag) + " domain");
      break;
    case TermOp::ConstVec:
      if (is_poly_domain(tag) && t->cvec.kind() != Kind::Rational)
        throw DomainError("Real64 constant not allowed in " + domain_name(tag) + " domain");
      if (tag == DomainTag::PolyOverIntegers)
        for (const Rat& q : t->cvec.rats())
          if (q.get_den() != 1) throw DomainError("non-integer constant over the integers");
      break;
    case TermOp::Linear:
      if (tag == DomainTag::PolyOverIntegers)
        for (Dim i = 0; i < t->mat.rows(); ++i)
          for (Dim j = 0; j < t->mat.cols(); ++j)
            if (t->mat.at(i, j).get_den() != 1)
              throw DomainError("non-integer linear coefficient over the integers");
      break;
    default:
      break;
  }
  for (const auto& k : t->kids) check_domain(k, tag);
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->op != b->op || a->dom != b->dom || a->cod != b->cod) return false;
  switch (a->op) {
    case TermOp::Proj:
      if (a->proj_lo != b->proj_lo) return false;
      break;
    case TermOp::Linear:
      if (!(a->mat == b->mat)) return false;
      break;
    case TermOp::ConstVec:
      if (!(a->cvec == b->cvec)) return false;
      break;
    default:
      break;
  }
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!term_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

size_t term_size(const TermPtr& t) {
  size_t n = 1;
  for (const auto& k : t->kids) n += term_size(k);
  return n;
}

Vector eval(const TermPtr& t, const Vector& x, DomainTag tag) {
  if (x.dim() != t->dom) throw DimMismatch("eval: point dimension mismatch");
  if (is_poly_domain(tag)) {
    if (x.kind() != Kind::Rational) throw DomainError("exact domain expects rational points");
    return Vector::rationals(eval_generic<Rat>(*t, std::span<const Rat>(x.rats())));
  }
  if (x.kind() != Kind::Real64) throw DomainError("smooth domain expects Real64 points");
  return Vector::reals(eval_generic<double>(*t, std::span<const double>(x.reals())));
}

// ---- serialization ----

namespace {

void write_term(const TermPtr& t, std::string& out) {
  switch (t->op) {
    case TermOp::Id:
      out += "(id " + std::to_string(t->dom) + ")";
      break;
    case TermOp::Proj:
      out += "(proj " + std::to_string(t->dom) + " " + std::to_string(t->proj_lo) + " " +
             std::to_string(t->cod) + ")";
      break;
    case TermOp::Pair:
      out += "(pair";
      for (const auto& k : t->kids) {
        out += " ";
        write_term(k, out);
      }
      out += ")";
      break;
    case TermOp::Comp:
      out += "(comp ";
      write_term(t->outer(), out);
      out += " ";
      write_term(t->inner(), out);
      out += ")";
      break;
    case TermOp::Zero:
      out += "(zero " + std::to_string(t->dom) + " " + std::to_string(t->cod) + ")";
      break;
    case TermOp::Add:
      out += "(add ";
      write_term(t->kids[0], out);
      out += " ";
      write_term(t->kids[1], out);
      out += ")";
      break;
    case TermOp::Neg:
      out += "(neg ";
      write_term(t->kids[0], out);
      out += ")";
      break;
    case TermOp::Linear: {
      out += "(linear [";
      for (Dim i = 0; i < t->mat.rows(); ++i) {
        if (i) out += " ";
        out += "[";
        for (Dim j = 0; j < t->mat.cols(); ++j) {
          if (j) out += " ";
          out += rat_to_string(t->mat.at(i, j));
        }
        out += "]";
      }
      out += "])";
      break;
    }
    case TermOp::ConstVec: {
      out += "(const [";
      for (Dim i = 0; i < t->cod; ++i) {
        if (i) out += " ";
        if (t->cvec.kind() == Kind::Rational)
          out += rat_to_string(t->cvec.rats()[static_cast<size_t>(i)]);
        else
          out += real_to_string(t->cvec.reals()[static_cast<size_t>(i)]);
      }
      out += "])";
      break;
    }
    case TermOp::One:
      out += "(one " + std::to_string(t->cod) + ")";
      break;
    case TermOp::Mul:
      out += "(mul)";
      break;
    case TermOp::Sin:
      out += "(sin)";
      break;
    case TermOp::Cos:
      out += "(cos)";
      break;
    case TermOp::Exp:
      out += "(exp)";
      break;
  }
}

struct Token {
  enum Type { LParen, RParen, LBracket, RBracket, Symbol, Number, End } type;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    skip_ws();
    Token tok{Token::End, "", line_, col_};
    if (pos_ >= s_.size()) return tok;
    char c = s_[pos_];
    if (c == '(') return take(Token::LParen);
    if (c == ')') return take(Token::RParen);
    if (c == '[') return take(Token::LBracket);
    if (c == ']') return take(Token::RBracket);
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      tok.type = Token::Number;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                  s_[pos_] == '/' || s_[pos_] == '.' || s_[pos_] == '-' ||
                                  s_[pos_] == '+'))
        tok.text += advance();
      return tok;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      tok.type = Token::Symbol;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        tok.text += advance();
      return tok;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  Token take(Token::Type ty) {
    Token tok{ty, std::string(1, s_[pos_]), line_, col_};
    advance();
    return tok;
  }
  char advance() {
    char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_ws() {
    while (pos_ < s_.size() &&
           (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == ',' || s_[pos_] == ';'))
      advance();
  }
  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : lex_(s) { cur_ = lex_.next(); }

  TermPtr parse() {
    TermPtr t = expr();
    if (cur_.type != Token::End) throw ParseError("trailing input after term", cur_.line, cur_.col);
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, cur_.line, cur_.col); }

  void eat(Token::Type ty, const char* what) {
    if (cur_.type != ty) fail(std::string("expected ") + what);
    cur_ = lex_.next();
  }

  long number() {
    if (cur_.type != Token::Number) fail("expected a number");
    long v;
    try {
      size_t used = 0;
      v = std::stol(cur_.text, &used);
      if (used != cur_.text.size()) fail("expected an integer");
    } catch (const std::exception&) {
      fail("expected an integer");
    }
    cur_ = lex_.next();
    return v;
  }

  bool looks_real(const std::string& s) {
    return s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
           s.find('E') != std::string::npos;
  }

  Rat rational() {
    if (cur_.type != Token::Number || looks_real(cur_.text)) fail("expected a rational (p/q)");
    Rat q;
    try {
      q = rat_from_string(cur_.text);
    } catch (const Error& e) {
      fail(e.what());
    }
    cur_ = lex_.next();
    return q;
  }

  // entries of a (const [...]) literal: all-rational unless any entry is a decimal
  Vector const_vector() {
    eat(Token::LBracket, "'['");
    std::vector<std::string> raw;
    while (cur_.type == Token::Number) {
      raw.push_back(cur_.text);
      cur_ = lex_.next();
    }
    eat(Token::RBracket, "']'");
    bool real = false;
    for (const auto& s : raw) real |= looks_real(s);
    if (real) {
      std::vector<double> v;
      for (const auto& s : raw) {
        try {
          v.push_back(std::stod(s));
        } catch (const std::exception&) {
          fail("bad float literal " + s);
        }
      }
      return Vector::reals(std::move(v));
    }
    std::vector<Rat> v;
    for (const auto& s : raw) v.push_back(rat_from_string(s));
    return Vector::rationals(std::move(v));
  }

  LinMap matrix() {
    eat(Token::LBracket, "'['");
    std::vector<std::vector<Rat>> rows;
    while (cur_.type == Token::LBracket) {
      eat(Token::LBracket, "'['");
      std::vector<Rat> row;
      while (cur_.type == Token::Number) row.push_back(rational());
      eat(Token::RBracket, "']'");
      rows.push_back(std::move(row));
    }
    eat(Token::RBracket, "']'");
    if (!rows.empty()) {
      size_t w = rows[0].size();
      for (const auto& r : rows)
        if (r.size() != w) fail("ragged matrix literal");
    }
    return LinMap::from_rows(rows);
  }

  TermPtr expr() {
    int line = cur_.line, col = cur_.col;
    eat(Token::LParen, "'('");
    if (cur_.type != Token::Symbol) fail("expected a constructor name");
    std::string head = cur_.text;
    cur_ = lex_.next();
    TermPtr t;
    try {
      if (head == "id") {
        t = t_id(static_cast<Dim>(number()));
      } else if (head == "proj") {
        Dim n = static_cast<Dim>(number());
        Dim lo = static_cast<Dim>(number());
        Dim len = static_cast<Dim>(number());
        t = t_proj(n, lo, len);
      } else if (head == "pair") {
        std::vector<TermPtr> parts;
        while (cur_.type == Token::LParen) parts.push_back(expr());
        t = t_pair(std::move(parts));
      } else if (head == "comp") {
        TermPtr f = expr();
        TermPtr g = expr();
        t = t_comp(std::move(f), std::move(g));
      } else if (head == "zero") {
        Dim d = static_cast<Dim>(number());
        Dim c = static_cast<Dim>(number());
        t = t_zero(d, c);
      } else if (head == "add") {
        TermPtr f = expr();
        TermPtr g = expr();
        t = t_add(std::move(f), std::move(g));
      } else if (head == "neg") {
        t = t_neg(expr());
      } else if (head == "linear") {
        t = t_linear(matrix());
      } else if (head == "const") {
        t = t_const(const_vector());
      } else if (head == "one") {
        t = t_one(static_cast<Dim>(number()));
      } else if (head == "mul") {
        t = t_mul();
      } else if (head == "sin") {
        t = t_sin();
      } else if (head == "cos") {
        t = t_cos();
      } else if (head == "exp") {
        t = t_exp();
      } else {
        fail("unknown constructor '" + head + "'");
      }
    } catch (const TypeError& e) {
      throw ParseError(e.what(), line, col);
    }
    eat(Token::RParen, "')'");
    return t;
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

std::string serialize(const TermPtr& t) {
  std::string out;
  write_term(t, out);
  return out;
}

TermPtr parse_term(const std::string& text) {
  Parser p(text);
  return p.parse();
}

}  // namespace crdc
