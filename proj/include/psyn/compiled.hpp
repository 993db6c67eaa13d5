#pragma once

#include "psyn/model.hpp"

namespace psyn {

// Parameter-free MDP over state indices. Rows only hold positive entries.
struct NumMdp {
	struct Choice {
		int action; // index into CompiledPmdp::action_names, or -1
		std::vector<std::pair<int, Rational>> succ;
	};
	int n = 0;
	int init = 0;
	std::vector<std::vector<Choice>> rows;
	std::vector<char> target;
};

// Index-based view of a Pmdp for repeated instantiation.
class CompiledPmdp {
public:
	struct Label {
		enum Kind { Const, Var, OneMinus, General } kind = Const;
		int param = -1;
		Rational c;
		Polynomial poly;
	};
	struct Choice {
		int action;
		std::vector<std::pair<int, Label>> succ;
	};

	CompiledPmdp(const Pmdp &m, const std::set<std::string> &target);

	const std::vector<std::string> &state_names() const { return states_; }
	int num_states() const { return static_cast<int>(rows_.size()); }
	int num_params() const { return static_cast<int>(params_.size()); }
	const std::vector<std::string> &params() const { return params_; }
	const std::vector<std::string> &action_names() const { return actions_; }
	const std::vector<std::vector<Choice>> &rows() const { return rows_; }
	const std::vector<char> &target() const { return target_; }
	int init() const { return init_; }

	// values indexed like params(); does not check well-definedness
	NumMdp instantiate(const std::vector<Rational> &u) const;
	NumMdp instantiate(const Instantiation &u) const;
	std::vector<Rational> point(const Instantiation &u) const;
	// graph at the graph-preserving topology (every labelled edge present)
	NumMdp skeleton() const;

	// choice indices of a named scheduler
	std::vector<int> choices_of(const Scheduler &sigma) const;
	Scheduler scheduler_of(const std::vector<int> &choice) const;

private:
	std::vector<std::string> states_, params_, actions_;
	std::vector<std::vector<Choice>> rows_;
	std::vector<char> target_;
	int init_ = 0;
};

} // namespace psyn
