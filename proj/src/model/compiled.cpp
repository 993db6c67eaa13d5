#include "psyn/compiled.hpp"

#include <algorithm>

namespace psyn {

CompiledPmdp::CompiledPmdp(const Pmdp &m, const std::set<std::string> &target)
	: states_(m.states), params_(m.params)
{
	std::map<std::string, int> pidx, aidx;
	for (size_t i = 0; i < params_.size(); i++)
		pidx[params_[i]] = static_cast<int>(i);
	std::map<std::string, int> sidx;
	for (size_t i = 0; i < states_.size(); i++)
		sidx[states_[i]] = static_cast<int>(i);
	rows_.resize(states_.size());
	target_.assign(states_.size(), 0);
	for (const auto &t : target) {
		auto it = sidx.find(t);
		if (it == sidx.end())
			throw ModelError("target state '" + t + "' is not declared");
		target_[it->second] = 1;
	}
	init_ = sidx.at(m.initial);
	for (size_t s = 0; s < states_.size(); s++) {
		for (const auto &a : m.actions(states_[s])) {
			auto [it, fresh] = aidx.emplace(a, static_cast<int>(actions_.size()));
			if (fresh)
				actions_.push_back(a);
			Choice c{it->second, {}};
			for (const auto &[t, p] : m.row(states_[s], a)) {
				Label l;
				if (p.is_constant()) {
					l.kind = Label::Const;
					l.c = p.constant_term();
				} else {
					auto vs = p.variables();
					const std::string &x = *vs.begin();
					if (vs.size() == 1 && p == Polynomial::var(x)) {
						l.kind = Label::Var;
						l.param = pidx.at(x);
					} else if (vs.size() == 1 && p == Polynomial::one_minus(x)) {
						l.kind = Label::OneMinus;
						l.param = pidx.at(x);
					} else {
						l.kind = Label::General;
						l.poly = p;
					}
				}
				c.succ.emplace_back(sidx.at(t), std::move(l));
			}
			rows_[s].push_back(std::move(c));
		}
	}
}

NumMdp CompiledPmdp::instantiate(const std::vector<Rational> &u) const
{
	NumMdp r;
	r.n = num_states();
	r.init = init_;
	r.target = target_;
	r.rows.resize(rows_.size());
	Valuation val;
	bool need_val = false;
	for (size_t s = 0; s < rows_.size(); s++) {
		r.rows[s].reserve(rows_[s].size());
		for (const auto &c : rows_[s]) {
			NumMdp::Choice nc{c.action, {}};
			nc.succ.reserve(c.succ.size());
			for (const auto &[t, l] : c.succ) {
				Rational v;
				switch (l.kind) {
				case Label::Const: v = l.c; break;
				case Label::Var: v = u[l.param]; break;
				case Label::OneMinus: v = 1 - u[l.param]; break;
				case Label::General:
					if (!need_val) {
						for (size_t i = 0; i < params_.size(); i++)
							val[params_[i]] = u[i];
						need_val = true;
					}
					v = l.poly.eval(val);
					break;
				}
				if (v != 0)
					nc.succ.emplace_back(t, std::move(v));
			}
			r.rows[s].push_back(std::move(nc));
		}
	}
	return r;
}

std::vector<Rational> CompiledPmdp::point(const Instantiation &u) const
{
	std::vector<Rational> v(params_.size());
	for (size_t i = 0; i < params_.size(); i++) {
		auto it = u.find(params_[i]);
		if (it == u.end())
			throw MissingParameter(params_[i]);
		v[i] = it->second;
	}
	return v;
}

NumMdp CompiledPmdp::instantiate(const Instantiation &u) const
{
	return instantiate(point(u));
}

NumMdp CompiledPmdp::skeleton() const
{
	NumMdp r;
	r.n = num_states();
	r.init = init_;
	r.target = target_;
	r.rows.resize(rows_.size());
	for (size_t s = 0; s < rows_.size(); s++)
		for (const auto &c : rows_[s]) {
			NumMdp::Choice nc{c.action, {}};
			for (const auto &[t, l] : c.succ)
				nc.succ.emplace_back(t, Rational(1));
			r.rows[s].push_back(std::move(nc));
		}
	return r;
}

std::vector<int> CompiledPmdp::choices_of(const Scheduler &sigma) const
{
	std::vector<int> ch(rows_.size(), 0);
	for (size_t s = 0; s < rows_.size(); s++) {
		auto it = sigma.choice.find(states_[s]);
		if (it == sigma.choice.end()) {
			if (rows_[s].size() > 1)
				throw ModelError("scheduler has no choice for state '" + states_[s] + "'");
			continue;
		}
		auto at = std::find(actions_.begin(), actions_.end(), it->second);
		int a = at == actions_.end() ? -2 : static_cast<int>(at - actions_.begin());
		auto ct = std::find_if(rows_[s].begin(), rows_[s].end(), [&](const Choice &c) { return c.action == a; });
		if (ct == rows_[s].end())
			throw ModelError("scheduler picks '" + it->second + "' which is not enabled in '" + states_[s] + "'");
		ch[s] = static_cast<int>(ct - rows_[s].begin());
	}
	return ch;
}

Scheduler CompiledPmdp::scheduler_of(const std::vector<int> &choice) const
{
	Scheduler sc;
	for (size_t s = 0; s < rows_.size(); s++)
		if (!rows_[s].empty())
			sc.choice[states_[s]] = actions_[rows_[s][choice[s]].action];
	return sc;
}

} // namespace psyn
