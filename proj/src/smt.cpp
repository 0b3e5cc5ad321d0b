#include "syminfer/smt.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace syminfer {

using Clock = std::chrono::steady_clock;

std::string to_string(SmtVerdict::Status s) {
  switch (s) {
    case SmtVerdict::Status::Sat: return "sat";
    case SmtVerdict::Status::Unsat: return "unsat";
    case SmtVerdict::Status::Unknown: return "unknown";
  }
  return "unknown";
}

std::vector<std::string> split_command(const std::string& cmd) {
  std::istringstream is(cmd);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

// ---------------------------------------------------------------------------
// Emission

namespace {

std::string numeral(const Int& v) {
  if (sgn(v) < 0) return "(- " + Int(-v).get_str() + ")";
  return v.get_str();
}

std::string smt_monomial(const Int& c, const Monomial& m, const SymbolNames& names) {
  if (m.is_one()) return numeral(c);
  std::vector<std::string> factors;
  if (c != 1) factors.push_back(numeral(c));
  for (const auto& [v, e] : m.factors())
    for (unsigned i = 0; i < e; ++i) factors.push_back(names(v));
  if (factors.size() == 1) return factors.front();
  std::string out = "(*";
  for (const auto& f : factors) out += " " + f;
  return out + ")";
}

std::string smt_formula(const Formula& f, const SymbolNames& names) {
  switch (f.kind) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::Atom: {
      Int c = f.poly.constant_term();
      std::string lhs = smt_term(f.poly - Poly(c), names);
      std::string rhs = numeral(-c);
      switch (f.op) {
        case CmpOp::Eq: return "(= " + lhs + " " + rhs + ")";
        case CmpOp::Ne: return "(not (= " + lhs + " " + rhs + "))";
        case CmpOp::Lt: return "(< " + lhs + " " + rhs + ")";
        case CmpOp::Le: return "(<= " + lhs + " " + rhs + ")";
        case CmpOp::Gt: return "(> " + lhs + " " + rhs + ")";
        case CmpOp::Ge: return "(>= " + lhs + " " + rhs + ")";
      }
      break;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::string out = f.kind == Formula::Kind::And ? "(and" : "(or";
      for (const auto& g : f.args) out += " " + smt_formula(g, names);
      return out + ")";
    }
  }
  return "true";
}

std::vector<VarId> symbols_of(const Formula& f) {
  std::set<VarId> s;
  f.collect_vars(s);
  return {s.begin(), s.end()};
}

bool linear(const Formula& f) {
  if (f.kind == Formula::Kind::Atom && f.poly.degree() > 1) return false;
  return std::all_of(f.args.begin(), f.args.end(), [](const Formula& g) { return linear(g); });
}

std::string script_for(const Formula& f, const std::vector<VarId>& symbols, const SymbolNames& names) {
  std::string out = "(set-option :produce-models true)\n(set-logic ";
  out += linear(f) ? "QF_LIA" : "QF_NIA";
  out += ")\n";
  for (VarId v : symbols) out += "(declare-const " + names(v) + " Int)\n";
  out += "(assert " + smt_formula(f, names) + ")\n(check-sat)\n";
  return out;
}

// Minimal s-expression reader for solver replies.
struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
};

SExpr parse_sexpr(const std::string& text, std::size_t& i) {
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i >= text.size()) throw SmtError("malformed solver reply: unexpected end");
  SExpr e;
  if (text[i] == '(') {
    e.is_list = true;
    ++i;
    while (true) {
      skip();
      if (i >= text.size()) throw SmtError("malformed solver reply: unbalanced parentheses");
      if (text[i] == ')') {
        ++i;
        break;
      }
      e.list.push_back(parse_sexpr(text, i));
    }
    return e;
  }
  if (text[i] == ')') throw SmtError("malformed solver reply: unexpected ')'");
  if (text[i] == '|') {
    std::size_t j = text.find('|', i + 1);
    if (j == std::string::npos) throw SmtError("malformed solver reply: unterminated symbol");
    e.atom = text.substr(i + 1, j - i - 1);
    i = j + 1;
    return e;
  }
  std::size_t j = i;
  while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' &&
         text[j] != ')')
    ++j;
  e.atom = text.substr(i, j - i);
  i = j;
  return e;
}

Int value_of(const SExpr& e) {
  try {
    if (!e.is_list) return Int(e.atom);
    if (e.list.size() == 2 && !e.list[0].is_list && e.list[0].atom == "-") return -value_of(e.list[1]);
  } catch (const std::invalid_argument&) {
  }
  throw SmtError("malformed solver reply: unsupported model value");
}

}  // namespace

std::string smt_term(const Poly& p, const SymbolNames& names) {
  if (p.is_zero()) return "0";
  std::vector<std::string> parts;
  for (const auto& [m, c] : p.terms()) parts.push_back(smt_monomial(c, m, names));
  if (parts.size() == 1) return parts.front();
  std::string out = "(+";
  for (const auto& s : parts) out += " " + s;
  return out + ")";
}

std::string smt_script(const Formula& f, const SymbolNames& names) {
  return script_for(f, symbols_of(f), names);
}

// ---------------------------------------------------------------------------
// Solver process

struct Solver::Process {
  pid_t pid = -1;
  int to_child = -1;
  int from_child = -1;
  std::string buffer;
  bool fresh = true;

  enum class Read { Ok, Timeout, Eof };

  explicit Process(const std::vector<std::string>& argv) {
    if (argv.empty()) throw SmtError("empty solver command");
    int in[2];
    int out[2];
    int status[2];
    if (pipe(in) != 0 || pipe(out) != 0 || pipe2(status, O_CLOEXEC) != 0)
      throw SmtError(std::string("pipe: ") + std::strerror(errno));
    pid = fork();
    if (pid < 0) throw SmtError(std::string("fork: ") + std::strerror(errno));
    if (pid == 0) {
      dup2(in[0], STDIN_FILENO);
      dup2(out[1], STDOUT_FILENO);
      int devnull = open("/dev/null", O_WRONLY);
      if (devnull >= 0) dup2(devnull, STDERR_FILENO);
      close(in[0]);
      close(in[1]);
      close(out[0]);
      close(out[1]);
      close(status[0]);
      std::vector<char*> args;
      for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
      args.push_back(nullptr);
      execvp(args[0], args.data());
      int err = errno;
      (void)!write(status[1], &err, sizeof err);
      _exit(127);
    }
    close(in[0]);
    close(out[1]);
    close(status[1]);
    to_child = in[1];
    from_child = out[0];
    int err = 0;
    ssize_t n = read(status[0], &err, sizeof err);
    close(status[0]);
    if (n > 0) {
      stop();
      throw SmtError("cannot start solver '" + argv[0] + "': " + std::strerror(err));
    }
  }

  ~Process() { stop(); }

  void stop() {
    if (to_child >= 0) close(to_child);
    if (from_child >= 0) close(from_child);
    to_child = from_child = -1;
    if (pid > 0) {
      kill(pid, SIGKILL);
      waitpid(pid, nullptr, 0);
      pid = -1;
    }
  }

  bool send(const std::string& s) {
    std::size_t off = 0;
    while (off < s.size()) {
      ssize_t n = write(to_child, s.data() + off, s.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        return false;
      }
      off += static_cast<std::size_t>(n);
    }
    return true;
  }

  Read fill(Clock::time_point deadline) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
    if (left <= 0) return Read::Timeout;
    pollfd p{from_child, POLLIN, 0};
    int r = poll(&p, 1, static_cast<int>(left));
    if (r == 0) return Read::Timeout;
    if (r < 0) return errno == EINTR ? Read::Ok : Read::Eof;
    char buf[4096];
    ssize_t n = read(from_child, buf, sizeof buf);
    if (n <= 0) return Read::Eof;
    buffer.append(buf, static_cast<std::size_t>(n));
    return Read::Ok;
  }

  Read read_line(std::string& line, Clock::time_point deadline) {
    while (true) {
      auto nl = buffer.find('\n');
      if (nl != std::string::npos) {
        line = buffer.substr(0, nl);
        buffer.erase(0, nl + 1);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        if (line.empty()) continue;
        return Read::Ok;
      }
      if (auto r = fill(deadline); r != Read::Ok) return r;
    }
  }

  // Reads one balanced s-expression.
  Read read_sexpr(std::string& out, Clock::time_point deadline) {
    while (true) {
      int depth = 0;
      bool started = false;
      bool quoted = false;
      for (std::size_t i = 0; i < buffer.size(); ++i) {
        char c = buffer[i];
        if (quoted) {
          if (c == '|') quoted = false;
          continue;
        }
        if (c == '|') {
          quoted = true;
        } else if (c == '(') {
          ++depth;
          started = true;
        } else if (c == ')') {
          --depth;
          if (started && depth == 0) {
            out = buffer.substr(0, i + 1);
            buffer.erase(0, i + 1);
            return Read::Ok;
          }
        }
      }
      if (auto r = fill(deadline); r != Read::Ok) return r;
    }
  }
};

Solver::Solver(SolverConfig cfg) : cfg_(std::move(cfg)) {
  signal(SIGPIPE, SIG_IGN);
  if (!cfg_.log_dir.empty()) std::filesystem::create_directories(cfg_.log_dir);
}

Solver::~Solver() = default;

SmtVerdict Solver::check_sat(const Formula& f, const SymbolNames& names) {
  auto symbols = symbols_of(f);
  std::string script = script_for(f, symbols, names);
  if (cfg_.cache) {
    if (auto it = cache_.find(script); it != cache_.end()) {
      ++cache_hits_;
      return it->second;
    }
  }
  auto start = Clock::now();
  SmtVerdict v = run(script, symbols, names);
  seconds_ += std::chrono::duration<double>(Clock::now() - start).count();
  if (cfg_.cache) cache_.emplace(std::move(script), v);
  return v;
}

SmtVerdict Solver::check_implication(const Formula& lhs, const Formula& rhs, const SymbolNames& names) {
  return check_sat(Formula::conj(lhs, Formula::negation(rhs)), names);
}

SmtVerdict Solver::run(const std::string& script, const std::vector<VarId>& symbols, const SymbolNames& names) {
  SmtVerdict v;
  v.transcript = next_id_++;
  auto deadline = Clock::now() + std::chrono::milliseconds(cfg_.timeout_ms);
  if (!cfg_.reuse_process || !proc_) proc_ = std::make_unique<Process>(cfg_.command);
  Process& p = *proc_;
  auto abandon = [&](const std::string& reason) {
    proc_.reset();
    v.status = SmtVerdict::Status::Unknown;
    v.reason = reason;
    log(v.transcript, script, v);
    return v;
  };
  if (!p.fresh && !p.send("(reset)\n")) return abandon("incomplete");
  p.fresh = false;
  if (!p.send(script)) return abandon("incomplete");
  std::string line;
  switch (p.read_line(line, deadline)) {
    case Process::Read::Timeout: return abandon("timeout");
    case Process::Read::Eof: return abandon("incomplete");
    case Process::Read::Ok: break;
  }
  if (line == "unsat") {
    v.status = SmtVerdict::Status::Unsat;
  } else if (line == "unknown") {
    v.status = SmtVerdict::Status::Unknown;
    v.reason = "incomplete";
  } else if (line == "sat") {
    v.status = SmtVerdict::Status::Sat;
    if (!symbols.empty()) {
      std::string req = "(get-value (";
      for (std::size_t i = 0; i < symbols.size(); ++i) req += (i ? " " : "") + names(symbols[i]);
      req += "))\n";
      if (!p.send(req)) return abandon("incomplete");
      std::string reply;
      switch (p.read_sexpr(reply, deadline)) {
        case Process::Read::Timeout: return abandon("timeout");
        case Process::Read::Eof: return abandon("incomplete");
        case Process::Read::Ok: break;
      }
      std::size_t pos = 0;
      SExpr e = parse_sexpr(reply, pos);
      std::map<std::string, VarId> by_name;
      for (VarId s : symbols) by_name.emplace(names(s), s);
      if (!e.is_list) throw SmtError("malformed solver reply: " + reply);
      for (const auto& pair : e.list) {
        if (!pair.is_list || pair.list.size() != 2 || pair.list[0].is_list)
          throw SmtError("malformed solver reply: " + reply);
        auto it = by_name.find(pair.list[0].atom);
        if (it == by_name.end()) throw SmtError("solver returned a value for unknown symbol " + pair.list[0].atom);
        v.model[it->second] = value_of(pair.list[1]);
      }
      if (v.model.size() != symbols.size()) throw SmtError("solver model is not total: " + reply);
    }
  } else {
    proc_.reset();
    throw SmtError("malformed solver reply: " + line);
  }
  if (!cfg_.reuse_process) proc_.reset();
  log(v.transcript, script, v);
  return v;
}

void Solver::log(std::uint64_t id, const std::string& script, const SmtVerdict& v) const {
  if (cfg_.log_dir.empty()) return;
  char name[32];
  std::snprintf(name, sizeof name, "%06llu.smt2", static_cast<unsigned long long>(id));
  std::ofstream os(std::filesystem::path(cfg_.log_dir) / name);
  os << script << "; result: " << to_string(v.status);
  if (!v.reason.empty()) os << " (" << v.reason << ")";
  os << '\n';
  for (const auto& [sym, val] : v.model) os << "; model " << sym << " = " << val.get_str() << '\n';
}

FeasibilityResult SolverFeasibility::check(const Formula& f) {
  SmtVerdict v = solver_.check_sat(f, input_smt_name);
  FeasibilityResult r;
  switch (v.status) {
    case SmtVerdict::Status::Sat:
      r.status = Feasibility::Sat;
      r.model.assign(n_, Int(0));
      for (const auto& [sym, val] : v.model)
        if (sym < n_) r.model[sym] = val;
      break;
    case SmtVerdict::Status::Unsat: r.status = Feasibility::Unsat; break;
    case SmtVerdict::Status::Unknown: r.status = Feasibility::Unknown; break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Symbol layout

std::string input_smt_name(VarId i) { return "X!" + std::to_string(i + 1); }

namespace {

const std::set<std::string> kReserved = {
    "and", "or", "not", "xor", "ite", "let", "distinct", "true", "false", "abs", "div", "mod",
    "Int", "Bool", "Real", "par", "as", "exists", "forall", "match", "to_real", "to_int", "is_int"};

}  // namespace

std::string VcSymbols::smt_name(VarId id) const {
  if (id < num_inputs()) return input_smt_name(id);
  const std::string& n = program->vars.at(id - num_inputs());
  return kReserved.count(n) ? "v!" + n : n;
}

std::string VcSymbols::display_name(VarId id) const {
  if (id < num_inputs()) return input_name(id);
  return program->vars.at(id - num_inputs());
}

Formula encode_state(const SymState& s, const std::vector<int>& vars, const VcSymbols& syms) {
  std::vector<Formula> parts;
  parts.push_back(s.path_condition());
  for (int v : vars) {
    const auto& e = s.env.at(static_cast<std::size_t>(v));
    if (!e) continue;
    parts.push_back(Formula::atom(Poly::var(syms.var(v)), CmpOp::Eq, *e));
  }
  return Formula::conj(std::move(parts));
}

}  // namespace syminfer
