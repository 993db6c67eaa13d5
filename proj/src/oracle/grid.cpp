#include "psyn/oracle.hpp"

#include <sstream>

namespace psyn {

namespace {

Interval axis_interval(const ParamSpace &space, const std::string &x)
{
	switch (space.kind) {
	case ParamSpace::WD: return {0, 1, false, false};
	case ParamSpace::GP: return {0, 1, true, true};
	case ParamSpace::EpsBox: return {space.eps, 1 - space.eps, false, false};
	case ParamSpace::Box: {
		auto it = space.box.find(x);
		return it == space.box.end() ? Interval{0, 1, false, false} : it->second;
	}
	}
	return {};
}

} // namespace

Grid Grid::make(const Pmdp &m, const ParamSpace &space, unsigned resolution, std::vector<Rational> mandatory)
{
	if (resolution < 2)
		throw OracleError("grid resolution must be at least 2");
	Grid g;
	g.space = space;
	g.resolution = resolution;
	g.mandatory = std::move(mandatory);
	for (const auto &x : m.params) {
		Interval iv = axis_interval(space, x);
		std::set<Rational> pts;
		for (unsigned k = 0; k < resolution; k++)
			pts.insert(iv.lo + (iv.hi - iv.lo) * frac(k, resolution - 1));
		for (const auto &c : g.mandatory)
			pts.insert(c);
		std::vector<Rational> &axis = g.axes[x];
		for (const auto &p : pts)
			if (iv.contains(p))
				axis.push_back(p);
	}
	return g;
}

size_t Grid::raw_size() const
{
	size_t n = 1;
	for (const auto &[x, a] : axes)
		n *= a.size();
	return n;
}

size_t Grid::for_each(const Pmdp &m, const std::function<bool(const Instantiation &)> &f, size_t *skipped) const
{
	std::vector<const std::vector<Rational> *> ax;
	for (const auto &x : m.params) {
		auto it = axes.find(x);
		if (it == axes.end())
			throw OracleError("grid has no axis for parameter '" + x + "'");
		if (it->second.empty())
			return 0;
		ax.push_back(&it->second);
	}
	std::vector<size_t> idx(ax.size(), 0);
	size_t visited = 0;
	Instantiation u;
	for (;;) {
		for (size_t i = 0; i < ax.size(); i++)
			u[m.params[i]] = (*ax[i])[idx[i]];
		if (space.contains(m, u)) {
			visited++;
			if (!f(u))
				return visited;
		} else if (skipped) {
			++*skipped;
		}
		size_t i = 0;
		while (i < idx.size() && ++idx[i] == ax[i]->size())
			idx[i++] = 0;
		if (i == idx.size())
			return visited;
	}
}

std::vector<Instantiation> Grid::points(const Pmdp &m) const
{
	std::vector<Instantiation> out;
	for_each(m, [&](const Instantiation &u) {
		out.push_back(u);
		return true;
	});
	return out;
}

std::string Grid::str() const
{
	std::ostringstream os;
	os << space.str() << ", resolution " << resolution << ", " << raw_size() << " points";
	if (!mandatory.empty()) {
		os << ", mandatory {";
		for (size_t i = 0; i < mandatory.size(); i++)
			os << (i ? "," : "") << to_string(mandatory[i]);
		os << "}";
	}
	return os.str();
}

} // namespace psyn
