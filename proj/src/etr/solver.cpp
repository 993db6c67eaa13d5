#include "psyn/etr.hpp"

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace psyn {

Assignment parse_smt_model(const std::string &text, std::vector<std::string> &irrational);

const char *to_string(SolveStatus s)
{
	switch (s) {
	case SolveStatus::Sat: return "sat";
	case SolveStatus::Unsat: return "unsat";
	case SolveStatus::Unknown: return "unknown";
	case SolveStatus::Unavailable: return "unavailable";
	case SolveStatus::Timeout: return "timeout";
	case SolveStatus::Error: return "error";
	}
	return "?";
}

SolverConfig SolverConfig::from_env()
{
	SolverConfig c;
	if (const char *s = std::getenv("PSYN_SMT_SOLVER"))
		c.command = s;
	if (const char *t = std::getenv("PSYN_SMT_TIMEOUT")) {
		char *end = nullptr;
		double v = std::strtod(t, &end);
		if (end != t && v > 0)
			c.timeout_s = v;
	}
	return c;
}

SolveResult solve_external(const EtrFormula &f, const SolverConfig &cfg)
{
	SolveResult r;
	if (!cfg.configured()) {
		r.status = SolveStatus::Unavailable;
		r.message = "no solver configured (set PSYN_SMT_SOLVER)";
		return r;
	}
	std::vector<std::string> args;
	{
		std::istringstream ss(cfg.command);
		for (std::string a; ss >> a;)
			args.push_back(a);
	}
	std::string input = emit_smtlib(f);

	int in[2], out[2];
	if (pipe(in) != 0 || pipe(out) != 0) {
		r.status = SolveStatus::Error;
		r.message = std::string("pipe: ") + std::strerror(errno);
		return r;
	}
	pid_t pid = fork();
	if (pid < 0) {
		r.status = SolveStatus::Error;
		r.message = std::string("fork: ") + std::strerror(errno);
		return r;
	}
	if (pid == 0) {
		dup2(in[0], 0);
		dup2(out[1], 1);
		int devnull = open("/dev/null", O_WRONLY);
		if (devnull >= 0)
			dup2(devnull, 2);
		close(in[0]);
		close(in[1]);
		close(out[0]);
		close(out[1]);
		std::vector<char *> argv;
		for (auto &a : args)
			argv.push_back(a.data());
		argv.push_back(nullptr);
		execvp(argv[0], argv.data());
		_exit(127);
	}
	close(in[0]);
	close(out[1]);
	signal(SIGPIPE, SIG_IGN);
	size_t off = 0;
	while (off < input.size()) {
		ssize_t w = write(in[1], input.data() + off, input.size() - off);
		if (w <= 0)
			break;
		off += static_cast<size_t>(w);
	}
	close(in[1]);

	std::string output;
	auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(cfg.timeout_s);
	bool timed_out = false;
	char buf[4096];
	for (;;) {
		auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
		if (left.count() <= 0) {
			timed_out = true;
			break;
		}
		pollfd p{out[0], POLLIN, 0};
		int k = poll(&p, 1, static_cast<int>(std::min<long long>(left.count(), 1000)));
		if (k < 0 && errno != EINTR)
			break;
		if (k <= 0)
			continue;
		ssize_t n = read(out[0], buf, sizeof buf);
		if (n <= 0)
			break;
		output.append(buf, static_cast<size_t>(n));
	}
	close(out[0]);
	if (timed_out)
		kill(pid, SIGKILL);
	int st = 0;
	waitpid(pid, &st, 0);
	if (timed_out) {
		r.status = SolveStatus::Timeout;
		r.message = "solver exceeded " + std::to_string(cfg.timeout_s) + " s";
		return r;
	}
	if (WIFEXITED(st) && WEXITSTATUS(st) == 127 && output.empty()) {
		r.status = SolveStatus::Unavailable;
		r.message = "cannot execute '" + args[0] + "'";
		return r;
	}
	std::istringstream os(output);
	std::string first;
	os >> first;
	if (first == "sat") {
		r.status = SolveStatus::Sat;
		std::string rest((std::istreambuf_iterator<char>(os)), std::istreambuf_iterator<char>());
		try {
			r.model = parse_smt_model(rest, r.irrational);
		} catch (const std::exception &e) {
			r.message = std::string("model not parsed: ") + e.what();
		}
	} else if (first == "unsat") {
		r.status = SolveStatus::Unsat;
	} else if (first == "unknown") {
		r.status = SolveStatus::Unknown;
	} else {
		r.status = SolveStatus::Error;
		r.message = "unexpected solver output: " + output.substr(0, 200);
		if (WIFSIGNALED(st))
			r.message = "solver killed by signal " + std::to_string(WTERMSIG(st));
	}
	return r;
}

} // namespace psyn
