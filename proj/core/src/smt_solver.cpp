#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>

#include "cise/eval.hpp"
#include "cise/smtlib.hpp"
#include "cise/solver.hpp"

namespace cise::solve {

namespace {

using Clock = std::chrono::steady_clock;

struct TimeoutExpired {};

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string word;
  while (is >> word) out.push_back(word);
  return out;
}

bool executable_exists(const std::string& name) {
  if (name.find('/') != std::string::npos) return ::access(name.c_str(), X_OK) == 0;
  const char* path = std::getenv("PATH");
  if (!path) return false;
  std::string dirs(path);
  std::size_t start = 0;
  while (start <= dirs.size()) {
    std::size_t end = dirs.find(':', start);
    if (end == std::string::npos) end = dirs.size();
    std::string candidate = dirs.substr(start, end - start);
    if (!candidate.empty()) candidate += "/";
    candidate += name;
    if (::access(candidate.c_str(), X_OK) == 0) return true;
    start = end + 1;
  }
  return false;
}

/// A solver child process with line-oriented SMT-LIB2 on stdin/stdout.
class SolverProcess {
public:
  explicit SolverProcess(const std::vector<std::string>& argv) {
    int to_child[2];
    int from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0)
      throw ProtocolError("pipe creation failed");
    pid_ = fork();
    if (pid_ < 0) throw ProtocolError("fork failed");
    if (pid_ == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      int devnull = ::open("/dev/null", O_WRONLY);
      if (devnull >= 0) ::dup2(devnull, STDERR_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      std::vector<char*> args;
      for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
      args.push_back(nullptr);
      ::execvp(args[0], args.data());
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    in_fd_ = to_child[1];
    out_fd_ = from_child[0];
    ::signal(SIGPIPE, SIG_IGN);
  }

  ~SolverProcess() {
    if (in_fd_ >= 0) ::close(in_fd_);
    if (out_fd_ >= 0) ::close(out_fd_);
    if (pid_ > 0) {
      int status = 0;
      if (::waitpid(pid_, &status, WNOHANG) == 0) {
        ::kill(pid_, SIGKILL);
        ::waitpid(pid_, &status, 0);
      }
    }
  }

  SolverProcess(const SolverProcess&) = delete;
  SolverProcess& operator=(const SolverProcess&) = delete;

  void send(const std::string& text) {
    std::size_t written = 0;
    while (written < text.size()) {
      ssize_t n = ::write(in_fd_, text.data() + written, text.size() - written);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw ProtocolError("solver stdin closed (" + std::string(std::strerror(errno)) + ")");
      }
      written += static_cast<std::size_t>(n);
    }
  }

  /// One reply: a balanced s-expression or a bare word.
  std::string read_reply(Clock::time_point deadline) {
    while (true) {
      if (auto reply = extract_reply()) return *reply;
      auto remaining = deadline - Clock::now();
      if (remaining <= Clock::duration::zero()) throw TimeoutExpired{};
      struct pollfd pfd {
        out_fd_, POLLIN, 0
      };
      int ms = static_cast<int>(
          std::chrono::duration_cast<std::chrono::milliseconds>(remaining).count());
      int rc = ::poll(&pfd, 1, ms < 1 ? 1 : ms);
      if (rc == 0) throw TimeoutExpired{};
      if (rc < 0) {
        if (errno == EINTR) continue;
        throw ProtocolError("poll failed");
      }
      char chunk[4096];
      ssize_t n = ::read(out_fd_, chunk, sizeof(chunk));
      if (n < 0) {
        if (errno == EINTR) continue;
        throw ProtocolError("read from solver failed");
      }
      if (n == 0) {
        if (auto reply = extract_reply()) return *reply;
        throw ProtocolError("solver exited before replying" + exit_hint());
      }
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

private:
  std::optional<std::string> extract_reply() {
    std::size_t i = 0;
    while (i < buffer_.size() && std::isspace(static_cast<unsigned char>(buffer_[i]))) ++i;
    if (i >= buffer_.size()) {
      buffer_.clear();
      return std::nullopt;
    }
    if (buffer_[i] == '(') {
      int depth = 0;
      bool quoted = false;
      for (std::size_t j = i; j < buffer_.size(); ++j) {
        char c = buffer_[j];
        if (quoted) {
          if (c == '|') quoted = false;
          continue;
        }
        if (c == '|') quoted = true;
        if (c == '(') ++depth;
        if (c == ')' && --depth == 0) {
          std::string reply = buffer_.substr(i, j - i + 1);
          buffer_.erase(0, j + 1);
          return reply;
        }
      }
      return std::nullopt;  // unbalanced so far
    }
    std::size_t j = i;
    while (j < buffer_.size() && !std::isspace(static_cast<unsigned char>(buffer_[j]))) ++j;
    if (j == buffer_.size()) return std::nullopt;  // word may continue
    std::string reply = buffer_.substr(i, j - i);
    buffer_.erase(0, j);
    return reply;
  }

  std::string exit_hint() {
    int status = 0;
    if (::waitpid(pid_, &status, WNOHANG) > 0) {
      pid_ = -1;
      if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
        return " (executable could not be run)";
      if (WIFEXITED(status))
        return " (exit status " + std::to_string(WEXITSTATUS(status)) + ")";
    }
    return "";
  }

  pid_t pid_ = -1;
  int in_fd_ = -1;
  int out_fd_ = -1;
  std::string buffer_;
};

// --- s-expression replies ----------------------------------------------------

struct Sexp {
  bool is_atom = true;
  std::string atom;
  std::vector<Sexp> items;
};

Sexp parse_sexp(const std::string& text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos >= text.size()) throw ProtocolError("truncated reply: " + text);
  if (text[pos] == '(') {
    ++pos;
    Sexp list;
    list.is_atom = false;
    while (true) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos >= text.size()) throw ProtocolError("unbalanced reply: " + text);
      if (text[pos] == ')') {
        ++pos;
        return list;
      }
      list.items.push_back(parse_sexp(text, pos));
    }
  }
  Sexp atom;
  if (text[pos] == '|') {
    std::size_t end = text.find('|', pos + 1);
    if (end == std::string::npos) throw ProtocolError("unterminated quoted symbol: " + text);
    atom.atom = text.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    return atom;
  }
  if (text[pos] == '"') {
    std::size_t end = text.find('"', pos + 1);
    if (end == std::string::npos) throw ProtocolError("unterminated string: " + text);
    atom.atom = text.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    return atom;
  }
  std::size_t start = pos;
  while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
         text[pos] != '(' && text[pos] != ')')
    ++pos;
  atom.atom = text.substr(start, pos - start);
  return atom;
}

Sexp parse_sexp(const std::string& text) {
  std::size_t pos = 0;
  return parse_sexp(text, pos);
}

/// Maps solver-specific element spellings (Client!val!0, @Client_0, ...) to
/// canonical indices in order of first appearance, per sort.
struct ElemTable {
  std::map<std::string, std::map<std::string, int>> seen;

  int index_for(const std::string& sort_name, const std::string& spelling) {
    auto& table = seen[sort_name];
    auto it = table.find(spelling);
    if (it != table.end()) return it->second;
    int index = static_cast<int>(table.size());
    table.emplace(spelling, index);
    return index;
  }
};

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Value decode_value(const Sexp& sexp, const Sort& sort, ElemTable& elems,
                   const DomainBounds& bounds) {
  switch (sort.kind()) {
    case Sort::Kind::Int: {
      if (sexp.is_atom && is_number(sexp.atom)) return Value::int_value(std::stoll(sexp.atom));
      if (!sexp.is_atom && sexp.items.size() == 2 && sexp.items[0].is_atom &&
          sexp.items[0].atom == "-")
        return Value::int_value(-decode_value(sexp.items[1], sort, elems, bounds).as_int());
      throw ProtocolError("expected an integer value");
    }
    case Sort::Kind::Bool: {
      if (sexp.is_atom && (sexp.atom == "true" || sexp.atom == "false"))
        return Value::bool_value(sexp.atom == "true");
      throw ProtocolError("expected a boolean value");
    }
    case Sort::Kind::Uninterpreted: {
      // Plain spelling (z3: Client!val!0) or (as @abstract Sort) (cvc5).
      if (sexp.is_atom) return Value::elem(sort.name(), elems.index_for(sort.name(), sexp.atom));
      if (sexp.items.size() == 3 && sexp.items[0].is_atom && sexp.items[0].atom == "as" &&
          sexp.items[1].is_atom)
        return Value::elem(sort.name(), elems.index_for(sort.name(), sexp.items[1].atom));
      throw ProtocolError("expected an element of sort " + sort.name());
    }
    case Sort::Kind::Map: {
      if (sexp.is_atom) throw ProtocolError("expected an array value, got " + sexp.atom);
      // (store <array> <key> <value>)
      if (sexp.items.size() == 4 && sexp.items[0].is_atom && sexp.items[0].atom == "store") {
        Value base = decode_value(sexp.items[1], sort, elems, bounds);
        Value key = decode_value(sexp.items[2], sort.key(), elems, bounds);
        Value value = decode_value(sexp.items[3], sort.value(), elems, bounds);
        return base.store(key, value);
      }
      // ((as const (Array ...)) <default>)
      if (sexp.items.size() == 2 && !sexp.items[0].is_atom && sexp.items[0].items.size() >= 2 &&
          sexp.items[0].items[0].is_atom && sexp.items[0].items[0].atom == "as" &&
          sexp.items[0].items[1].is_atom && sexp.items[0].items[1].atom == "const") {
        Value def = decode_value(sexp.items[1], sort.value(), elems, bounds);
        return Value::map(std::move(def), {});
      }
      throw ProtocolError("unsupported array model shape");
    }
  }
  throw ProtocolError("unsupported value shape");
}

}  // namespace

std::vector<std::string> resolve_solver_command(const SolverConfig& config) {
  std::string command = config.solver_command;
  if (command.empty()) {
    if (const char* env = std::getenv("CISE_SMT_SOLVER")) command = env;
  }
  if (command.empty()) command = "z3 -in";
  std::vector<std::string> argv = split_words(command);
  if (argv.empty()) throw BackendUnavailable("empty solver command");
  if (!executable_exists(argv[0]))
    throw BackendUnavailable("solver executable '" + argv[0] + "' not found");
  return argv;
}

bool smt_available(const SolverConfig& config) {
  try {
    resolve_solver_command(config);
    return true;
  } catch (const BackendUnavailable&) {
    return false;
  }
}

SolverVerdict check_smt(const vc::VerificationTask& task, const SolverConfig& config) {
  std::vector<std::string> argv = resolve_solver_command(config);
  auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(config.timeout_seconds));
  SolverProcess proc(argv);
  try {
    proc.send(to_smtlib(task));
    std::string answer = proc.read_reply(deadline);
    if (answer.rfind("(error", 0) == 0) throw ProtocolError(answer);
    if (answer == "unsat") {
      proc.send("(exit)\n");
      return SolverVerdict::unsat();
    }
    if (answer == "unknown") {
      proc.send("(exit)\n");
      return SolverVerdict::unknown(SolverVerdict::UnknownReason::Incompleteness);
    }
    if (answer != "sat") throw ProtocolError("unexpected check-sat answer: " + answer);

    std::ostringstream getv;
    getv << "(get-value (";
    bool first = true;
    for (const auto& [name, info] : task.decode) {
      (void)info;
      if (!first) getv << " ";
      getv << "|" << name << "|";
      first = false;
    }
    getv << "))\n";
    proc.send(getv.str());
    std::string reply = proc.read_reply(deadline);
    if (reply.rfind("(error", 0) == 0) throw ProtocolError(reply);
    try {
      proc.send("(exit)\n");
    } catch (const ProtocolError&) {
      // solver already gone; the model is still good
    }

    Sexp parsed = parse_sexp(reply);
    if (parsed.is_atom || parsed.items.size() != task.decode.size())
      throw ProtocolError("malformed get-value reply: " + reply);

    Model model;
    ElemTable elems;
    std::size_t index = 0;
    for (const auto& [name, info] : task.decode) {
      const Sexp& pair = parsed.items[index++];
      if (pair.is_atom || pair.items.size() != 2)
        throw ProtocolError("malformed get-value pair in: " + reply);
      model.assignments.emplace(name, decode_value(pair.items[1], info.sort, elems,
                                                   config.bounds));
    }
    return SolverVerdict::sat(std::move(model));
  } catch (const TimeoutExpired&) {
    return SolverVerdict::unknown(SolverVerdict::UnknownReason::Timeout);
  }
}

SolverVerdict check(const vc::VerificationTask& task, const SolverConfig& config) {
  if (config.backend == Backend::Finite)
    return check_finite(task, config.bounds, config.timeout_seconds);
  SolverVerdict verdict = check_smt(task, config);
  if (verdict.is_definite()) return verdict;
  // Indefinite smt answers fall back to the bounded enumerator; reports tag
  // such verdicts with a qualifier.
  SolverVerdict bounded = check_finite(task, config.bounds, config.timeout_seconds);
  if (bounded.is_definite()) bounded.qualifier = "bounded";
  return bounded;
}

}  // namespace cise::solve
