#include "syminfer/lang.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace syminfer {

LangError::LangError(Kind kind, int line, int column, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      kind_(kind),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------------------
// AST helpers

AExpr AExpr::variable(std::string n) {
  AExpr e;
  e.kind = Kind::Var;
  e.name = std::move(n);
  return e;
}

AExpr AExpr::constant(Int v) {
  AExpr e;
  e.kind = Kind::Const;
  e.value = std::move(v);
  return e;
}

AExpr AExpr::unary(Kind k, AExpr a) {
  AExpr e;
  e.kind = k;
  e.args.push_back(std::move(a));
  return e;
}

AExpr AExpr::binary(Kind k, AExpr a, AExpr b) {
  AExpr e;
  e.kind = k;
  e.args.push_back(std::move(a));
  e.args.push_back(std::move(b));
  return e;
}

bool AExpr::operator==(const AExpr& o) const {
  return kind == o.kind && name == o.name && value == o.value && args == o.args;
}

CmpOp negate(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Ge: return CmpOp::Lt;
  }
  return op;
}

std::string_view cmp_symbol(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

BExpr BExpr::literal(bool b) {
  BExpr e;
  e.kind = b ? Kind::True : Kind::False;
  return e;
}

BExpr BExpr::compare(CmpOp op, AExpr lhs, AExpr rhs) {
  BExpr e;
  e.kind = Kind::Cmp;
  e.op = op;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

BExpr BExpr::conj(BExpr a, BExpr b) {
  BExpr e;
  e.kind = Kind::And;
  e.args.push_back(std::move(a));
  e.args.push_back(std::move(b));
  return e;
}

BExpr BExpr::disj(BExpr a, BExpr b) {
  BExpr e;
  e.kind = Kind::Or;
  e.args.push_back(std::move(a));
  e.args.push_back(std::move(b));
  return e;
}

BExpr BExpr::negation(BExpr a) {
  BExpr e;
  e.kind = Kind::Not;
  e.args.push_back(std::move(a));
  return e;
}

bool Stmt::operator==(const Stmt& o) const {
  return kind == o.kind && cond == o.cond && decls == o.decls && target == o.target &&
         value == o.value && body == o.body && orelse == o.orelse && has_else == o.has_else &&
         label == o.label;
}

const LocationInfo& Program::location(const std::string& label) const {
  auto it = locations.find(label);
  if (it == locations.end()) throw std::invalid_argument("unknown location '" + label + "'");
  return it->second;
}

std::vector<std::string> Program::var_names(const std::vector<int>& ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (int i : ids) out.push_back(vars.at(static_cast<std::size_t>(i)));
  return out;
}

int Program::var_index(std::string_view n) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == n) return static_cast<int>(i);
  return -1;
}

bool Program::same_ast(const Program& o) const {
  return name == o.name && params == o.params && body == o.body;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int tl = line;
    int tc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    static const char* two[] = {"==", "!=", "<=", ">=", "&&", "||"};
    bool matched = false;
    for (const char* t : two) {
      if (src.substr(i, 2) == t) {
        out.push_back({Tok::Punct, t, tl, tc});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("(){};,:=<>+-*!@").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), tl, tc});
      advance(1);
      continue;
    }
    throw LangError(LangError::Kind::Syntax, tl, tc, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const std::set<std::string, std::less<>> kKeywords = {"fn",    "int",  "assume", "while",
                                                      "if",    "else", "true",   "false"};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Program program() {
    Program p;
    expect_keyword("fn");
    p.name = ident();
    expect("(");
    if (!at(")")) {
      do {
        p.params.push_back(ident());
        expect(":");
        expect_keyword("int");
      } while (accept(","));
    }
    expect(")");
    p.body = block();
    if (peek().kind != Tok::End) fail("trailing input after program");
    return p;
  }

  AExpr aexpr_only() {
    AExpr e = aexpr();
    if (peek().kind != Tok::End) fail("trailing input after expression");
    return e;
  }

  BExpr bexpr_only() {
    BExpr e = bexpr();
    if (peek().kind != Tok::End) fail("trailing input after expression");
    return e;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(std::string_view punct) const {
    return peek().kind == Tok::Punct && peek().text == punct;
  }
  bool at_keyword(std::string_view kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }
  bool accept(std::string_view punct) {
    if (!at(punct)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw LangError(LangError::Kind::Syntax, t.line, t.col,
                    msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"));
  }
  void expect(std::string_view punct) {
    if (!accept(punct)) fail("expected '" + std::string(punct) + "'");
  }
  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail("expected '" + std::string(kw) + "'");
    ++pos_;
  }
  std::string ident() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || kKeywords.count(t.text)) fail("expected identifier");
    ++pos_;
    return t.text;
  }

  std::vector<Stmt> block() {
    expect("{");
    std::vector<Stmt> out;
    while (!at("}")) {
      if (peek().kind == Tok::End) fail("unterminated block");
      out.push_back(stmt());
    }
    expect("}");
    return out;
  }

  Stmt stmt() {
    Stmt s;
    s.line = peek().line;
    if (at_keyword("assume")) {
      ++pos_;
      s.kind = Stmt::Kind::Assume;
      expect("(");
      s.cond = bexpr();
      expect(")");
      expect(";");
    } else if (at_keyword("int")) {
      ++pos_;
      s.kind = Stmt::Kind::Decl;
      do {
        std::string n = ident();
        std::optional<AExpr> init;
        if (accept("=")) init = aexpr();
        s.decls.emplace_back(std::move(n), std::move(init));
      } while (accept(","));
      expect(";");
    } else if (at_keyword("while")) {
      ++pos_;
      s.kind = Stmt::Kind::While;
      expect("(");
      s.cond = bexpr();
      expect(")");
      if (accept("@")) s.label = ident();
      s.body = block();
    } else if (at_keyword("if")) {
      ++pos_;
      s.kind = Stmt::Kind::If;
      expect("(");
      s.cond = bexpr();
      expect(")");
      s.body = block();
      if (at_keyword("else")) {
        ++pos_;
        s.has_else = true;
        s.orelse = block();
      }
    } else if (accept("@")) {
      s.kind = Stmt::Kind::LocMark;
      s.label = ident();
      expect(";");
    } else {
      s.kind = Stmt::Kind::Assign;
      s.target = ident();
      expect("=");
      s.value = aexpr();
      expect(";");
    }
    return s;
  }

  AExpr aexpr() {
    AExpr e = product();
    while (at("+") || at("-")) {
      auto k = at("+") ? AExpr::Kind::Add : AExpr::Kind::Sub;
      ++pos_;
      e = AExpr::binary(k, std::move(e), product());
    }
    return e;
  }

  AExpr product() {
    AExpr e = unary();
    while (accept("*")) e = AExpr::binary(AExpr::Kind::Mul, std::move(e), unary());
    return e;
  }

  AExpr unary() {
    if (accept("-")) {
      if (peek().kind == Tok::Int) return AExpr::constant(-Int(toks_[pos_++].text));
      return AExpr::unary(AExpr::Kind::Neg, unary());
    }
    return atom();
  }

  AExpr atom() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      ++pos_;
      return AExpr::constant(Int(t.text));
    }
    if (accept("(")) {
      AExpr e = aexpr();
      expect(")");
      return e;
    }
    return AExpr::variable(ident());
  }

  BExpr bexpr() {
    BExpr e = conjunction();
    while (accept("||")) e = BExpr::disj(std::move(e), conjunction());
    return e;
  }

  BExpr conjunction() {
    BExpr e = bunary();
    while (accept("&&")) e = BExpr::conj(std::move(e), bunary());
    return e;
  }

  BExpr bunary() {
    if (accept("!")) return BExpr::negation(bunary());
    return batom();
  }

  std::optional<CmpOp> cmp_op() {
    static const std::pair<const char*, CmpOp> ops[] = {
        {"==", CmpOp::Eq}, {"!=", CmpOp::Ne}, {"<=", CmpOp::Le},
        {">=", CmpOp::Ge}, {"<", CmpOp::Lt},  {">", CmpOp::Gt}};
    for (const auto& [sym, op] : ops) {
      if (accept(sym)) return op;
    }
    return std::nullopt;
  }

  BExpr batom() {
    if (at_keyword("true")) {
      ++pos_;
      return BExpr::literal(true);
    }
    if (at_keyword("false")) {
      ++pos_;
      return BExpr::literal(false);
    }
    std::size_t save = pos_;
    if (at("(")) {
      // Either a parenthesized comparison operand or a parenthesized condition.
      try {
        return comparison();
      } catch (const LangError&) {
        pos_ = save;
      }
      expect("(");
      BExpr e = bexpr();
      expect(")");
      return e;
    }
    return comparison();
  }

  BExpr comparison() {
    AExpr lhs = aexpr();
    auto op = cmp_op();
    if (!op) fail("expected comparison operator");
    AExpr rhs = aexpr();
    return BExpr::compare(*op, std::move(lhs), std::move(rhs));
  }
};

// ---------------------------------------------------------------------------
// Validation

class Validator {
 public:
  explicit Validator(Program& p) : p_(p) {}

  void run() {
    p_.vars.clear();
    p_.locations.clear();
    p_.location_order.clear();
    scopes_.assign(1, {});
    std::set<int> assigned;
    for (const auto& param : p_.params) {
      int id = declare(param, 0);
      assigned.insert(id);
    }
    walk(p_.body, assigned);
  }

 private:
  Program& p_;
  std::vector<std::vector<std::pair<std::string, int>>> scopes_;

  int declare(const std::string& n, int line) {
    if (std::find(p_.vars.begin(), p_.vars.end(), n) != p_.vars.end())
      throw LangError(LangError::Kind::DuplicateDeclaration, line, 0, "variable '" + n + "' declared twice");
    p_.vars.push_back(n);
    int id = static_cast<int>(p_.vars.size()) - 1;
    scopes_.back().emplace_back(n, id);
    return id;
  }

  int lookup(const std::string& n, int line) const {
    for (auto s = scopes_.rbegin(); s != scopes_.rend(); ++s)
      for (const auto& [name, id] : *s)
        if (name == n) return id;
    throw LangError(LangError::Kind::UseBeforeDeclaration, line, 0, "use of undeclared variable '" + n + "'");
  }

  void check(AExpr& e, const std::set<int>& assigned, int line) {
    if (e.kind == AExpr::Kind::Var) {
      e.var = lookup(e.name, line);
      if (!assigned.count(e.var))
        throw LangError(LangError::Kind::Uninitialized, line, 0, "variable '" + e.name + "' may be read before assignment");
    }
    for (auto& a : e.args) check(a, assigned, line);
  }

  void check(BExpr& e, const std::set<int>& assigned, int line) {
    for (auto& a : e.operands) check(a, assigned, line);
    for (auto& a : e.args) check(a, assigned, line);
  }

  void mark(const std::string& label, const std::set<int>& assigned, int line, bool head) {
    if (p_.locations.count(label))
      throw LangError(LangError::Kind::DuplicateLocation, line, 0, "duplicate location '" + label + "'");
    LocationInfo info;
    info.label = label;
    info.loop_head = head;
    for (const auto& s : scopes_)
      for (const auto& [name, id] : s)
        if (assigned.count(id)) info.vars.push_back(id);
    std::sort(info.vars.begin(), info.vars.end());
    p_.locations.emplace(label, std::move(info));
    p_.location_order.push_back(label);
  }

  void walk(std::vector<Stmt>& block, std::set<int>& assigned) {
    for (auto& s : block) {
      switch (s.kind) {
        case Stmt::Kind::Assume:
          check(s.cond, assigned, s.line);
          break;
        case Stmt::Kind::Decl:
          s.decl_vars.clear();
          for (auto& [n, init] : s.decls) {
            if (init) check(*init, assigned, s.line);
            int id = declare(n, s.line);
            s.decl_vars.push_back(id);
            if (init) assigned.insert(id);
          }
          break;
        case Stmt::Kind::Assign:
          check(s.value, assigned, s.line);
          s.target_var = lookup(s.target, s.line);
          assigned.insert(s.target_var);
          break;
        case Stmt::Kind::LocMark:
          mark(s.label, assigned, s.line, false);
          break;
        case Stmt::Kind::While: {
          if (!s.label.empty()) mark(s.label, assigned, s.line, true);
          check(s.cond, assigned, s.line);
          std::set<int> inner = assigned;
          scopes_.emplace_back();
          walk(s.body, inner);
          scopes_.pop_back();
          break;
        }
        case Stmt::Kind::If: {
          check(s.cond, assigned, s.line);
          std::set<int> then_set = assigned;
          scopes_.emplace_back();
          walk(s.body, then_set);
          scopes_.pop_back();
          std::set<int> else_set = assigned;
          scopes_.emplace_back();
          walk(s.orelse, else_set);
          scopes_.pop_back();
          std::set<int> both;
          std::set_intersection(then_set.begin(), then_set.end(), else_set.begin(), else_set.end(),
                                std::inserter(both, both.begin()));
          assigned = std::move(both);
          break;
        }
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Printing

int prec(const AExpr& e) {
  switch (e.kind) {
    case AExpr::Kind::Add:
    case AExpr::Kind::Sub: return 1;
    case AExpr::Kind::Mul: return 2;
    case AExpr::Kind::Neg: return 3;
    case AExpr::Kind::Const: return sgn(e.value) < 0 ? 3 : 4;
    case AExpr::Kind::Var: return 4;
  }
  return 4;
}

void print(const AExpr& e, std::ostream& os);

void print_operand(const AExpr& e, int min_prec, std::ostream& os) {
  if (prec(e) < min_prec) {
    os << '(';
    print(e, os);
    os << ')';
  } else {
    print(e, os);
  }
}

void print(const AExpr& e, std::ostream& os) {
  switch (e.kind) {
    case AExpr::Kind::Var: os << e.name; break;
    case AExpr::Kind::Const: os << e.value.get_str(); break;
    case AExpr::Kind::Neg:
      os << '-';
      // -(5) keeps a negated literal distinct from the literal -5
      if (e.args[0].kind == AExpr::Kind::Const && sgn(e.args[0].value) >= 0) {
        os << '(' << e.args[0].value.get_str() << ')';
      } else {
        print_operand(e.args[0], 3, os);
      }
      break;
    case AExpr::Kind::Add:
    case AExpr::Kind::Sub:
      print_operand(e.args[0], 1, os);
      os << (e.kind == AExpr::Kind::Add ? " + " : " - ");
      print_operand(e.args[1], 2, os);
      break;
    case AExpr::Kind::Mul:
      print_operand(e.args[0], 2, os);
      os << '*';
      print_operand(e.args[1], 3, os);
      break;
  }
}

int prec(const BExpr& e) {
  switch (e.kind) {
    case BExpr::Kind::Or: return 1;
    case BExpr::Kind::And: return 2;
    default: return 3;
  }
}

void print(const BExpr& e, std::ostream& os);

void print_operand(const BExpr& e, int min_prec, std::ostream& os) {
  if (prec(e) < min_prec) {
    os << '(';
    print(e, os);
    os << ')';
  } else {
    print(e, os);
  }
}

void print(const BExpr& e, std::ostream& os) {
  switch (e.kind) {
    case BExpr::Kind::True: os << "true"; break;
    case BExpr::Kind::False: os << "false"; break;
    case BExpr::Kind::Cmp:
      print(e.operands[0], os);
      os << ' ' << cmp_symbol(e.op) << ' ';
      print(e.operands[1], os);
      break;
    case BExpr::Kind::And:
    case BExpr::Kind::Or: {
      int p = prec(e);
      print_operand(e.args[0], p, os);
      os << (e.kind == BExpr::Kind::And ? " && " : " || ");
      print_operand(e.args[1], p + 1, os);
      break;
    }
    case BExpr::Kind::Not: {
      const BExpr& a = e.args[0];
      os << '!';
      if (a.kind == BExpr::Kind::Not || a.kind == BExpr::Kind::True || a.kind == BExpr::Kind::False) {
        print(a, os);
      } else {
        os << '(';
        print(a, os);
        os << ')';
      }
      break;
    }
  }
}

void print_block(const std::vector<Stmt>& block, int indent, std::ostream& os);

void print_stmt(const Stmt& s, int indent, std::ostream& os) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (s.kind) {
    case Stmt::Kind::Assume:
      os << pad << "assume(";
      print(s.cond, os);
      os << ");\n";
      break;
    case Stmt::Kind::Decl: {
      os << pad << "int ";
      bool first = true;
      for (const auto& [n, init] : s.decls) {
        if (!first) os << ", ";
        first = false;
        os << n;
        if (init) {
          os << " = ";
          print(*init, os);
        }
      }
      os << ";\n";
      break;
    }
    case Stmt::Kind::Assign:
      os << pad << s.target << " = ";
      print(s.value, os);
      os << ";\n";
      break;
    case Stmt::Kind::LocMark:
      os << pad << '@' << s.label << ";\n";
      break;
    case Stmt::Kind::While:
      os << pad << "while (";
      print(s.cond, os);
      os << ") ";
      if (!s.label.empty()) os << '@' << s.label << ' ';
      print_block(s.body, indent, os);
      os << '\n';
      break;
    case Stmt::Kind::If:
      os << pad << "if (";
      print(s.cond, os);
      os << ") ";
      print_block(s.body, indent, os);
      if (s.has_else) {
        os << " else ";
        print_block(s.orelse, indent, os);
      }
      os << '\n';
      break;
  }
}

void print_block(const std::vector<Stmt>& block, int indent, std::ostream& os) {
  os << "{\n";
  for (const auto& s : block) print_stmt(s, indent + 1, os);
  os << std::string(static_cast<std::size_t>(indent) * 2, ' ') << '}';
}

// ---------------------------------------------------------------------------
// Interpretation

struct AssumeFailed {};
struct OutOfFuel {};

class Interpreter {
 public:
  Interpreter(const Program& p, const std::string& loc, long fuel)
      : p_(p), loc_(loc), info_(p.location(loc)), fuel_(fuel), env_(p.vars.size()) {}

  Trace run(std::span<const Int> inputs) {
    if (inputs.size() != p_.params.size())
      throw std::invalid_argument("interpret: expected " + std::to_string(p_.params.size()) + " inputs");
    for (std::size_t i = 0; i < inputs.size(); ++i) env_[i] = inputs[i];
    try {
      exec(p_.body);
    } catch (const AssumeFailed&) {
      trace_.states.clear();
      trace_.assume_failed = true;
    } catch (const OutOfFuel&) {
      trace_.truncated = true;
    }
    return std::move(trace_);
  }

 private:
  const Program& p_;
  const std::string& loc_;
  const LocationInfo& info_;
  long fuel_;
  std::vector<Int> env_;
  Trace trace_;

  void tick() {
    if (--fuel_ < 0) throw OutOfFuel{};
  }

  void snapshot() {
    ConcreteState s;
    s.loc = loc_;
    for (int v : info_.vars) s.values.push_back(env_[static_cast<std::size_t>(v)]);
    trace_.states.push_back(std::move(s));
  }

  void exec(const std::vector<Stmt>& block) {
    for (const auto& s : block) {
      tick();
      switch (s.kind) {
        case Stmt::Kind::Assume:
          if (!eval(s.cond, env_)) throw AssumeFailed{};
          break;
        case Stmt::Kind::Decl:
          for (std::size_t i = 0; i < s.decls.size(); ++i)
            if (s.decls[i].second) env_[static_cast<std::size_t>(s.decl_vars[i])] = eval(*s.decls[i].second, env_);
          break;
        case Stmt::Kind::Assign:
          env_[static_cast<std::size_t>(s.target_var)] = eval(s.value, env_);
          break;
        case Stmt::Kind::LocMark:
          if (s.label == loc_) snapshot();
          break;
        case Stmt::Kind::While:
          while (true) {
            if (s.label == loc_) snapshot();
            if (!eval(s.cond, env_)) break;
            exec(s.body);
            tick();
          }
          break;
        case Stmt::Kind::If:
          if (eval(s.cond, env_)) {
            exec(s.body);
          } else {
            exec(s.orelse);
          }
          break;
      }
    }
  }
};

}  // namespace

Program parse(std::string_view text) {
  Parser parser(text);
  Program p = parser.program();
  validate(p);
  return p;
}

AExpr parse_aexpr(std::string_view text) { return Parser(text).aexpr_only(); }

BExpr parse_bexpr(std::string_view text) { return Parser(text).bexpr_only(); }

void validate(Program& p) { Validator(p).run(); }

std::string pretty_print(const Program& p) {
  std::ostringstream os;
  os << "fn " << p.name << '(';
  for (std::size_t i = 0; i < p.params.size(); ++i) {
    if (i) os << ", ";
    os << p.params[i] << ": int";
  }
  os << ") ";
  print_block(p.body, 0, os);
  os << '\n';
  return os.str();
}

std::string to_source(const AExpr& e) {
  std::ostringstream os;
  print(e, os);
  return os.str();
}

std::string to_source(const BExpr& e) {
  std::ostringstream os;
  print(e, os);
  return os.str();
}

Poly to_poly(const AExpr& e, const std::function<VarId(const std::string&)>& resolve) {
  switch (e.kind) {
    case AExpr::Kind::Var: return Poly::var(resolve(e.name));
    case AExpr::Kind::Const: return Poly(e.value);
    case AExpr::Kind::Neg: return -to_poly(e.args[0], resolve);
    case AExpr::Kind::Add: return to_poly(e.args[0], resolve) + to_poly(e.args[1], resolve);
    case AExpr::Kind::Sub: return to_poly(e.args[0], resolve) - to_poly(e.args[1], resolve);
    case AExpr::Kind::Mul: return to_poly(e.args[0], resolve) * to_poly(e.args[1], resolve);
  }
  return {};
}

Int eval(const AExpr& e, std::span<const Int> env) {
  switch (e.kind) {
    case AExpr::Kind::Var: return env[static_cast<std::size_t>(e.var)];
    case AExpr::Kind::Const: return e.value;
    case AExpr::Kind::Neg: return -eval(e.args[0], env);
    case AExpr::Kind::Add: return eval(e.args[0], env) + eval(e.args[1], env);
    case AExpr::Kind::Sub: return eval(e.args[0], env) - eval(e.args[1], env);
    case AExpr::Kind::Mul: return eval(e.args[0], env) * eval(e.args[1], env);
  }
  return 0;
}

bool eval(const BExpr& e, std::span<const Int> env) {
  switch (e.kind) {
    case BExpr::Kind::True: return true;
    case BExpr::Kind::False: return false;
    case BExpr::Kind::And: return eval(e.args[0], env) && eval(e.args[1], env);
    case BExpr::Kind::Or: return eval(e.args[0], env) || eval(e.args[1], env);
    case BExpr::Kind::Not: return !eval(e.args[0], env);
    case BExpr::Kind::Cmp: {
      int c = cmp(eval(e.operands[0], env), eval(e.operands[1], env));
      switch (e.op) {
        case CmpOp::Eq: return c == 0;
        case CmpOp::Ne: return c != 0;
        case CmpOp::Lt: return c < 0;
        case CmpOp::Le: return c <= 0;
        case CmpOp::Gt: return c > 0;
        case CmpOp::Ge: return c >= 0;
      }
    }
  }
  return false;
}

Trace interpret(const Program& p, std::span<const Int> inputs, const std::string& loc, long fuel) {
  return Interpreter(p, loc, fuel).run(inputs);
}

}  // namespace syminfer
