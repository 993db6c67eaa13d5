#include "psyn/analysis.hpp"

#include <algorithm>
#include <functional>

namespace psyn {

namespace {

// Tarjan over an explicit adjacency list; components come out sinks first.
std::vector<std::vector<int>> tarjan(const std::vector<std::vector<int>> &adj, const std::vector<char> &alive)
{
	int n = static_cast<int>(adj.size());
	std::vector<int> index(n, -1), low(n, 0), stack;
	std::vector<char> on(n, 0);
	std::vector<std::vector<int>> out;
	int counter = 0;
	struct Frame { int v; size_t next; };
	for (int root = 0; root < n; root++) {
		if (!alive[root] || index[root] >= 0)
			continue;
		std::vector<Frame> call{{root, 0}};
		index[root] = low[root] = counter++;
		stack.push_back(root);
		on[root] = 1;
		while (!call.empty()) {
			Frame &f = call.back();
			if (f.next < adj[f.v].size()) {
				int w = adj[f.v][f.next++];
				if (!alive[w])
					continue;
				if (index[w] < 0) {
					index[w] = low[w] = counter++;
					stack.push_back(w);
					on[w] = 1;
					call.push_back({w, 0});
				} else if (on[w]) {
					low[f.v] = std::min(low[f.v], index[w]);
				}
				continue;
			}
			int v = f.v;
			call.pop_back();
			if (!call.empty())
				low[call.back().v] = std::min(low[call.back().v], low[v]);
			if (low[v] == index[v]) {
				std::vector<int> comp;
				int w;
				do {
					w = stack.back();
					stack.pop_back();
					on[w] = 0;
					comp.push_back(w);
				} while (w != v);
				std::sort(comp.begin(), comp.end());
				out.push_back(std::move(comp));
			}
		}
	}
	return out;
}

std::vector<std::vector<int>> predecessors(const NumMdp &m, const std::vector<int> *choice)
{
	std::vector<std::vector<int>> pred(m.n);
	for (int s = 0; s < m.n; s++) {
		for (size_t c = 0; c < m.rows[s].size(); c++) {
			if (choice && static_cast<int>(c) != (*choice)[s])
				continue;
			for (const auto &[t, p] : m.rows[s][c].succ)
				pred[t].push_back(s);
		}
	}
	return pred;
}

} // namespace

std::vector<char> can_reach(const NumMdp &m, const std::vector<int> *choice)
{
	auto pred = predecessors(m, choice);
	std::vector<char> seen(m.n, 0);
	std::vector<int> queue;
	for (int s = 0; s < m.n; s++)
		if (m.target[s]) {
			seen[s] = 1;
			queue.push_back(s);
		}
	for (size_t i = 0; i < queue.size(); i++)
		for (int p : pred[queue[i]])
			if (!seen[p]) {
				seen[p] = 1;
				queue.push_back(p);
			}
	return seen;
}

std::vector<char> positive_under_all(const NumMdp &m)
{
	std::vector<char> in(m.target.begin(), m.target.end());
	for (bool changed = true; changed;) {
		changed = false;
		for (int s = 0; s < m.n; s++) {
			if (in[s] || m.rows[s].empty())
				continue;
			bool all = true;
			for (const auto &c : m.rows[s]) {
				bool hit = false;
				for (const auto &[t, p] : c.succ)
					if (in[t]) {
						hit = true;
						break;
					}
				if (!hit) {
					all = false;
					break;
				}
			}
			if (all) {
				in[s] = 1;
				changed = true;
			}
		}
	}
	return in;
}

std::vector<std::vector<int>> sccs(const NumMdp &m, const std::vector<int> &choice, const std::vector<char> &alive)
{
	std::vector<std::vector<int>> adj(m.n);
	for (int s = 0; s < m.n; s++)
		if (alive[s] && !m.rows[s].empty())
			for (const auto &[t, p] : m.rows[s][choice[s]].succ)
				adj[s].push_back(t);
	return tarjan(adj, alive);
}

std::vector<std::vector<int>> mecs(const NumMdp &m, const std::vector<char> &within)
{
	std::vector<char> alive = within;
	std::vector<std::vector<char>> enabled(m.n);
	for (int s = 0; s < m.n; s++) {
		enabled[s].assign(m.rows[s].size(), 0);
		if (!alive[s])
			continue;
		for (size_t c = 0; c < m.rows[s].size(); c++) {
			bool stays = true;
			for (const auto &[t, p] : m.rows[s][c].succ)
				if (!alive[t])
					stays = false;
			enabled[s][c] = stays;
		}
	}
	std::vector<std::vector<int>> comps;
	for (bool changed = true; changed;) {
		changed = false;
		for (int s = 0; s < m.n; s++)
			if (alive[s] && std::find(enabled[s].begin(), enabled[s].end(), 1) == enabled[s].end()) {
				alive[s] = 0;
				changed = true;
			}
		std::vector<std::vector<int>> adj(m.n);
		for (int s = 0; s < m.n; s++)
			for (size_t c = 0; c < m.rows[s].size(); c++)
				if (alive[s] && enabled[s][c])
					for (const auto &[t, p] : m.rows[s][c].succ)
						adj[s].push_back(t);
		comps = tarjan(adj, alive);
		std::vector<int> comp_of(m.n, -1);
		for (size_t i = 0; i < comps.size(); i++)
			for (int s : comps[i])
				comp_of[s] = static_cast<int>(i);
		for (int s = 0; s < m.n; s++) {
			if (!alive[s])
				continue;
			for (size_t c = 0; c < m.rows[s].size(); c++) {
				if (!enabled[s][c])
					continue;
				for (const auto &[t, p] : m.rows[s][c].succ)
					if (!alive[t] || comp_of[t] != comp_of[s]) {
						enabled[s][c] = 0;
						changed = true;
						break;
					}
			}
		}
	}
	std::sort(comps.begin(), comps.end());
	return comps;
}

ZeroSets zero_states(const Pmdp &m, const StateSet &target)
{
	CompiledPmdp cm(m, target);
	NumMdp g = cm.skeleton();
	auto any = can_reach(g);
	auto all = positive_under_all(g);
	ZeroSets z;
	for (int s = 0; s < g.n; s++) {
		if (!any[s])
			z.forall_zero.insert(cm.state_names()[s]);
		if (!all[s])
			z.exists_zero.insert(cm.state_names()[s]);
	}
	return z;
}

ComplementResult complement_target(const Pmdp &m, const StateSet &target)
{
	CompiledPmdp cm(m, target);
	NumMdp g = cm.skeleton();
	const auto &names = cm.state_names();
	auto reach = can_reach(g);

	std::vector<char> outside(g.n);
	for (int s = 0; s < g.n; s++)
		outside[s] = !g.target[s];
	// end components that could still leave towards T
	std::vector<std::vector<int>> collapse;
	for (auto &c : mecs(g, outside))
		if (reach[c.front()])
			collapse.push_back(c);

	// T must be absorbing, otherwise T' could be entered after T
	bool leaky_target = false;
	for (int s = 0; s < g.n && !leaky_target; s++)
		if (g.target[s])
			for (const auto &c : g.rows[s])
				for (const auto &[t, p] : c.succ)
					if (!reach[t])
						leaky_target = true;

	ComplementResult r;
	if (collapse.empty() && !leaky_target) {
		r.model = m;
		for (int s = 0; s < g.n; s++)
			if (!reach[s])
				r.target.insert(names[s]);
		return r;
	}

	r.changed = true;
	std::vector<int> comp_of(g.n, -1);
	std::vector<std::string> rep(g.n);
	for (int s = 0; s < g.n; s++)
		rep[s] = names[s];
	for (size_t i = 0; i < collapse.size(); i++)
		for (int s : collapse[i]) {
			comp_of[s] = static_cast<int>(i);
			rep[s] = "$ec" + std::to_string(i);
		}

	Pmdp q;
	q.params = m.params;
	q.metadata = m.metadata;
	q.metadata["generated_by"] = "complement_target";
	q.initial = rep[cm.init()];
	for (int s = 0; s < g.n; s++)
		q.add_state(rep[s]);
	const std::string sink = "$sink";
	std::map<std::string, int> idx;
	for (int s = 0; s < g.n; s++)
		idx[names[s]] = s;
	for (int s = 0; s < g.n; s++) {
		const std::string &sn = names[s];
		if (g.target[s]) {
			q.add_edge(sn, kDefaultAction, sn, Polynomial(1));
			continue;
		}
		for (const auto &a : m.actions(sn)) {
			const auto &row = m.row(sn, a);
			if (comp_of[s] < 0) {
				for (const auto &[t, p] : row)
					q.add_edge(sn, a, rep[idx.at(t)], p);
				continue;
			}
			bool leaves = false;
			for (const auto &[t, p] : row)
				if (comp_of[idx.at(t)] != comp_of[s])
					leaves = true;
			if (leaves)
				for (const auto &[t, p] : row)
					q.add_edge(rep[s], sn + "/" + a, rep[idx.at(t)], p);
		}
	}
	if (!collapse.empty()) {
		for (size_t i = 0; i < collapse.size(); i++)
			q.add_edge("$ec" + std::to_string(i), "$stay", sink, Polynomial(1));
		q.add_edge(sink, kDefaultAction, sink, Polynomial(1));
	}
	for (const auto &[name, set] : m.targets)
		for (const auto &s : set)
			q.targets[name].insert(rep[idx.at(s)]);

	CompiledPmdp cq(q, target);
	auto qreach = can_reach(cq.skeleton());
	for (int s = 0; s < cq.num_states(); s++)
		if (!qreach[s])
			r.target.insert(cq.state_names()[s]);
	r.note = std::to_string(collapse.size()) + " end component(s) collapsed" +
	         (leaky_target ? ", target made absorbing" : "");
	r.model = std::move(q);
	return r;
}

} // namespace psyn
