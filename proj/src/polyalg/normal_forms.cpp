#include "psyn/normal_forms.hpp"

namespace psyn {

Polynomial Summand::product() const
{
	Polynomial p(alpha);
	for (const Atom &a : factors)
		p *= a.poly();
	return p;
}

Polynomial PositiveCombination::reconstruct() const
{
	Polynomial p(beta);
	for (const Summand &s : summands)
		p += s.product();
	return p;
}

Rational PositiveCombination::alpha_sum() const
{
	Rational s = 0;
	for (const Summand &t : summands)
		s += t.alpha;
	return s;
}

Rational PositiveCombination::scaled_threshold() const
{
	return (mu - beta) / N;
}

PositiveCombination chonev_decompose(const Polynomial &f, const Rational &mu)
{
	PositiveCombination pc;
	pc.mu = mu;
	pc.beta = 0;
	for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
		const auto &[m, c] = *it;
		if (m.is_one()) {
			pc.beta += c;
			continue;
		}
		std::vector<std::string> xs;
		for (const auto &[n, e] : m.factors())
			for (unsigned k = 0; k < e; k++)
				xs.push_back(n);
		if (c > 0) {
			Summand s{c, {}};
			for (const auto &x : xs)
				s.factors.push_back({x, false});
			pc.summands.push_back(std::move(s));
			continue;
		}
		// -x1...xd = -1 + sum_i (1-x_i) x_{i+1}...x_d
		Rational a = -c;
		for (size_t i = 0; i < xs.size(); i++) {
			Summand s{a, {{xs[i], true}}};
			for (size_t j = i + 1; j < xs.size(); j++)
				s.factors.push_back({xs[j], false});
			pc.summands.push_back(std::move(s));
		}
		pc.beta -= a;
	}
	if (pc.beta > 0) {
		auto vars = f.variables();
		std::string x = vars.empty() ? std::string(kDummyParam) : *vars.begin();
		if (vars.empty())
			pc.dummy = x;
		pc.summands.push_back({pc.beta, {{x, false}}});
		pc.summands.push_back({pc.beta, {{x, true}}});
		pc.beta = 0;
	}
	Rational bound = std::max(pc.alpha_sum(), Rational(mu - pc.beta));
	mpz_class fl;
	mpz_fdiv_q(fl.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
	pc.N = Rational(fl + 1);
	if (pc.N <= 0)
		pc.N = 1;
	return pc;
}

Polynomial BinomialRep::expand() const
{
	Polynomial x = Polynomial::var(var), omx = Polynomial::one_minus(var), r;
	for (unsigned k = 0; k <= n; k++)
		r += (x.pow(n - k) * omx.pow(k)).scaled(p[k] * binomial(n, k));
	return r;
}

BinomialRep binomial_representation(const Polynomial &f, unsigned cap)
{
	auto vars = f.variables();
	if (vars.size() > 1)
		throw std::invalid_argument("binomial representation needs a univariate polynomial, got " + f.str());
	BinomialRep rep;
	rep.var = vars.empty() ? "x" : *vars.begin();
	std::vector<Rational> a = f.univariate_coeffs(rep.var);
	unsigned d = static_cast<unsigned>(a.size()) - 1;
	// Bernstein coefficients b_k for the basis C(d,k) x^k (1-x)^(d-k)
	std::vector<Rational> b(d + 1);
	for (unsigned k = 0; k <= d; k++)
		for (unsigned j = 0; j <= k; j++)
			b[k] += binomial(k, j) / binomial(d, j) * a[j];
	auto in_unit = [](const std::vector<Rational> &v) {
		for (const auto &q : v)
			if (q < 0 || q > 1)
				return false;
		return true;
	};
	unsigned n = d;
	for (unsigned it = 0; !in_unit(b); it++) {
		if (it == cap)
			throw ElevationCapExceeded(cap);
		std::vector<Rational> e(n + 2);
		e[0] = b[0];
		e[n + 1] = b[n];
		for (unsigned k = 1; k <= n; k++) {
			Rational t = frac(k, n + 1);
			e[k] = t * b[k - 1] + (1 - t) * b[k];
		}
		b = std::move(e);
		n++;
	}
	rep.n = n;
	rep.p.resize(n + 1);
	for (unsigned k = 0; k <= n; k++)
		rep.p[k] = b[n - k];
	return rep;
}

} // namespace psyn
