#include "aspmtqs/error.hpp"
#include "aspmtqs/smt/smt.hpp"

#include <cctype>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <filesystem>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace aspmtqs::smt {

namespace {

struct ProcessOutput {
  std::string out;
  std::string err;
  int status = 0;
  bool timed_out = false;
};

bool executable(const std::filesystem::path& p) {
  return !p.empty() && ::access(p.c_str(), X_OK) == 0 && !std::filesystem::is_directory(p);
}

std::vector<std::string> default_args(const std::string& path) {
  std::string name = std::filesystem::path(path).filename().string();
  if (name.find("z3") != std::string::npos) return {"-in"};
  if (name.find("cvc") != std::string::npos) return {"--lang=smt2", "--incremental"};
  return {};
}

ProcessOutput run_process(const std::string& path, const std::vector<std::string>& args,
                          const std::string& input, double timeout_s) {
  static const bool ignore_sigpipe = (std::signal(SIGPIPE, SIG_IGN), true);
  (void)ignore_sigpipe;
  int in[2], out[2], err[2];
  // Close-on-exec so that solvers started from other threads do not inherit these ends.
  if (::pipe2(in, O_CLOEXEC) || ::pipe2(out, O_CLOEXEC) || ::pipe2(err, O_CLOEXEC))
    throw SolverError("cannot create pipes");
  pid_t pid = ::fork();
  if (pid < 0) throw SolverError("cannot fork solver process");
  if (pid == 0) {
    ::dup2(in[0], 0);
    ::dup2(out[1], 1);
    ::dup2(err[1], 2);
    for (int fd : {in[0], in[1], out[0], out[1], err[0], err[1]}) ::close(fd);
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(path.c_str()));
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    ::execv(path.c_str(), argv.data());
    std::string msg = "exec failed: " + std::string(std::strerror(errno)) + "\n";
    (void)!::write(2, msg.data(), msg.size());
    ::_exit(127);
  }
  ::close(in[0]);
  ::close(out[1]);
  ::close(err[1]);
  ::fcntl(in[1], F_SETFL, O_NONBLOCK);

  ProcessOutput result;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(static_cast<long>(timeout_s * 1000));
  std::size_t written = 0;
  int in_fd = in[1];
  if (input.empty()) {
    ::close(in_fd);
    in_fd = -1;
  }
  int out_fd = out[0], err_fd = err[0];
  char buf[65536];
  while (out_fd >= 0 || err_fd >= 0) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      result.timed_out = true;
      ::kill(pid, SIGKILL);
      break;
    }
    std::vector<pollfd> fds;
    if (in_fd >= 0) fds.push_back({in_fd, POLLOUT, 0});
    if (out_fd >= 0) fds.push_back({out_fd, POLLIN, 0});
    if (err_fd >= 0) fds.push_back({err_fd, POLLIN, 0});
    int n = ::poll(fds.data(), fds.size(), static_cast<int>(std::min<long>(left.count(), 1000)));
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (const auto& p : fds) {
      if (!p.revents) continue;
      if (p.fd == in_fd) {
        ssize_t w = ::write(in_fd, input.data() + written, input.size() - written);
        if (w > 0) written += static_cast<std::size_t>(w);
        if (w < 0 && errno != EAGAIN) written = input.size();
        if (written == input.size()) {
          ::close(in_fd);
          in_fd = -1;
        }
      } else {
        ssize_t r = ::read(p.fd, buf, sizeof buf);
        if (r > 0) {
          (p.fd == out_fd ? result.out : result.err).append(buf, static_cast<std::size_t>(r));
        } else if (r == 0 || errno != EAGAIN) {
          ::close(p.fd);
          (p.fd == out_fd ? out_fd : err_fd) = -1;
        }
      }
    }
  }
  for (int fd : {in_fd, out_fd, err_fd})
    if (fd >= 0) ::close(fd);
  int status = 0;
  ::waitpid(pid, &status, 0);
  result.status = status;
  if (!result.timed_out && WIFEXITED(status) && WEXITSTATUS(status) == 127 &&
      result.err.rfind("exec failed", 0) == 0)
    throw SolverError("cannot run solver '" + path + "': " + result.err);
  return result;
}

std::string solver_diagnostics(const ProcessOutput& p) {
  std::string d = p.err;
  if (p.timed_out) d += "terminated after timeout";
  while (!d.empty() && std::isspace(static_cast<unsigned char>(d.back()))) d.pop_back();
  return d;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "sat";
    case Verdict::Unsat: return "unsat";
    case Verdict::Unknown: return "unknown";
    case Verdict::Timeout: return "timeout";
    case Verdict::SolverError: return "solver-error";
  }
  return "unknown";
}

const char* to_string(Entailment e) {
  switch (e) {
    case Entailment::Entailed: return "entailed";
    case Entailment::NotEntailed: return "not entailed";
    case Entailment::Unknown: return "unknown";
  }
  return "unknown";
}

std::string resolve_solver(const std::optional<std::string>& flag) {
  auto check = [](const std::string& p, const char* origin) {
    if (!executable(p)) throw SolverError(std::string("solver '") + p + "' from " + origin + " is not executable");
    return p;
  };
  if (flag && !flag->empty()) {
    if (flag->find('/') == std::string::npos) {
      if (const char* path = std::getenv("PATH")) {
        std::string dirs = path;
        std::size_t start = 0;
        while (start <= dirs.size()) {
          std::size_t end = dirs.find(':', start);
          if (end == std::string::npos) end = dirs.size();
          auto candidate = std::filesystem::path(dirs.substr(start, end - start)) / *flag;
          if (executable(candidate)) return candidate.string();
          start = end + 1;
        }
      }
    }
    return check(*flag, "--solver");
  }
  if (const char* env = std::getenv("ASPMTQS_SOLVER"); env && *env) return check(env, "ASPMTQS_SOLVER");
  if (const char* path = std::getenv("PATH")) {
    std::string dirs = path;
    std::size_t start = 0;
    while (start <= dirs.size()) {
      std::size_t end = dirs.find(':', start);
      if (end == std::string::npos) end = dirs.size();
      auto candidate = std::filesystem::path(dirs.substr(start, end - start)) / "z3";
      if (executable(candidate)) return candidate.string();
      start = end + 1;
    }
  }
  throw SolverError("no SMT solver found: pass --solver, set ASPMTQS_SOLVER, or put z3 on PATH");
}

SmtResult run_solver(const SmtScript& script, const SolverConfig& config) {
  auto start = std::chrono::steady_clock::now();
  auto args = config.args.empty() ? default_args(config.path) : config.args;
  ProcessOutput p = run_process(config.path, args, script.text(), config.timeout_s);
  SmtResult result;
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  result.diagnostics = solver_diagnostics(p);
  if (p.timed_out) {
    result.verdict = Verdict::Timeout;
    return result;
  }
  std::vector<SExpr> out;
  try {
    out = parse_sexprs(p.out);
  } catch (const SolverError& e) {
    result.verdict = Verdict::SolverError;
    result.diagnostics += std::string(e.what()) + "\n" + p.out;
    return result;
  }
  std::size_t i = 0;
  // An unsupported option or logic is harmless; any other error may have
  // dropped an assertion, so the verdict cannot be trusted.
  bool fatal = false;
  while (i < out.size() && out[i].is_list && !out[i].items.empty() && out[i].items[0].atom == "error") {
    std::string text = out[i].to_string();
    fatal = fatal || (text.find("option") == std::string::npos && text.find("logic") == std::string::npos);
    result.diagnostics += text + "\n";
    ++i;
  }
  if (fatal) {
    result.verdict = Verdict::SolverError;
    return result;
  }
  if (i >= out.size() || out[i].is_list) {
    result.verdict = Verdict::SolverError;
    result.diagnostics += "no verdict in solver output:\n" + p.out;
    return result;
  }
  const std::string& v = out[i].atom;
  if (v == "sat") {
    result.verdict = Verdict::Sat;
    Model m;
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (!out[j].is_list || (!out[j].items.empty() && out[j].items[0].atom == "error")) {
        result.diagnostics += out[j].to_string() + "\n";
        continue;
      }
      Model part = parse_model(out[j].to_string(), &script, config.precision);
      m.reals.insert(part.reals.begin(), part.reals.end());
      m.booleans.insert(part.booleans.begin(), part.booleans.end());
    }
    result.model = std::move(m);
  } else if (v == "unsat") {
    result.verdict = Verdict::Unsat;
  } else if (v == "unknown") {
    result.verdict = Verdict::Unknown;
  } else {
    result.verdict = Verdict::SolverError;
    result.diagnostics += "unexpected verdict '" + v + "'\n";
  }
  return result;
}

std::vector<Verdict> run_batch(const SmtScript& prelude, const std::vector<std::vector<std::string>>& checks,
                               const SolverConfig& config) {
  std::string text = prelude.prelude();
  for (const auto& c : checks) {
    text += "(push 1)\n";
    for (const auto& a : c) text += "(assert " + a + ")\n";
    text += "(check-sat)\n(pop 1)\n";
  }
  auto args = config.args.empty() ? default_args(config.path) : config.args;
  ProcessOutput p = run_process(config.path, args, text, config.timeout_s);
  std::vector<Verdict> verdicts;
  for (const auto& e : parse_sexprs(p.out)) {
    if (e.is_list) {
      if (!e.items.empty() && e.items[0].atom == "error")
        throw SolverError("solver error in batch: " + e.to_string());
      continue;
    }
    verdicts.push_back(e.atom == "sat"     ? Verdict::Sat
                       : e.atom == "unsat" ? Verdict::Unsat
                                           : Verdict::Unknown);
  }
  while (verdicts.size() < checks.size())
    verdicts.push_back(p.timed_out ? Verdict::Timeout : Verdict::SolverError);
  return verdicts;
}

EntailmentResult check_entailed(const CompletedTheory& theory, const Formula& query,
                                const SolverConfig& config, const EmitOptions& options) {
  Formula negated = Formula::negate(query);
  SmtScript script = emit_smtlib(theory, std::span<const Formula>(&negated, 1), options);
  EntailmentResult r;
  r.solver = run_solver(script, config);
  if (r.solver.verdict == Verdict::Unsat) r.entailment = Entailment::Entailed;
  if (r.solver.verdict == Verdict::Sat) r.entailment = Entailment::NotEntailed;
  return r;
}

}  // namespace aspmtqs::smt
