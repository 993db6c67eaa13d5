#include "psyn/analysis.hpp"

namespace psyn {

namespace {

using i128 = __int128;

bool fits_i64(const mpz_class &z) { return z.fits_slong_p(); }

// Solves (I - A) x = b for one strongly connected block, where A holds the
// in-block probabilities and b the contribution of already solved states.
// Fraction-free elimination over 128-bit integers when the data is small,
// exact rationals otherwise.
bool solve_block_fast(const std::vector<std::vector<Rational>> &A, const std::vector<Rational> &b, std::vector<Rational> &x)
{
	size_t n = A.size();
	mpz_class D = 1;
	for (size_t i = 0; i < n; i++) {
		for (size_t j = 0; j < n; j++)
			if (A[i][j] != 0)
				mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), A[i][j].get_den_mpz_t());
		if (b[i] != 0)
			mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), b[i].get_den_mpz_t());
		if (D > 1 << 20)
			return false;
	}
	long d = D.get_si();
	std::vector<std::vector<i128>> M(n, std::vector<i128>(n + 1));
	for (size_t i = 0; i < n; i++) {
		for (size_t j = 0; j < n; j++) {
			Rational v = (i == j ? Rational(1) : Rational(0)) - A[i][j];
			v *= d;
			if (!fits_i64(v.get_num()))
				return false;
			M[i][j] = v.get_num().get_si();
		}
		Rational v = b[i] * d;
		if (!fits_i64(v.get_num()))
			return false;
		M[i][n] = v.get_num().get_si();
	}
	i128 prev = 1;
	for (size_t k = 0; k < n; k++) {
		if (M[k][k] == 0) {
			size_t r = k + 1;
			while (r < n && M[r][k] == 0)
				r++;
			if (r == n)
				return false;
			std::swap(M[k], M[r]);
		}
		for (size_t i = k + 1; i < n; i++) {
			for (size_t j = k + 1; j <= n; j++) {
				i128 p1, p2, diff;
				if (__builtin_mul_overflow(M[k][k], M[i][j], &p1) || __builtin_mul_overflow(M[i][k], M[k][j], &p2) ||
				    __builtin_sub_overflow(p1, p2, &diff))
					return false;
				M[i][j] = diff / prev;
			}
			M[i][k] = 0;
		}
		prev = M[k][k];
	}
	auto to_mpz = [](i128 v) {
		bool neg = v < 0;
		unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
		mpz_class z = static_cast<unsigned long>(u >> 64);
		z <<= 64;
		z += static_cast<unsigned long>(u & ~0UL);
		return neg ? mpz_class(-z) : z;
	};
	x.assign(n, Rational(0));
	for (size_t ii = n; ii-- > 0;) {
		Rational acc(to_mpz(M[ii][n]));
		for (size_t j = ii + 1; j < n; j++)
			if (M[ii][j] != 0)
				acc -= Rational(to_mpz(M[ii][j])) * x[j];
		x[ii] = acc / Rational(to_mpz(M[ii][ii]));
	}
	return true;
}

void solve_block_exact(std::vector<std::vector<Rational>> A, std::vector<Rational> b, std::vector<Rational> &x)
{
	size_t n = A.size();
	for (size_t i = 0; i < n; i++) {
		for (size_t j = 0; j < n; j++)
			A[i][j] = (i == j ? Rational(1) : Rational(0)) - A[i][j];
	}
	for (size_t k = 0; k < n; k++) {
		size_t r = k;
		while (A[r][k] == 0)
			r++;
		std::swap(A[k], A[r]);
		std::swap(b[k], b[r]);
		for (size_t i = k + 1; i < n; i++) {
			if (A[i][k] == 0)
				continue;
			Rational f = A[i][k] / A[k][k];
			for (size_t j = k; j < n; j++)
				A[i][j] -= f * A[k][j];
			b[i] -= f * b[k];
		}
	}
	x.assign(n, Rational(0));
	for (size_t ii = n; ii-- > 0;) {
		Rational acc = b[ii];
		for (size_t j = ii + 1; j < n; j++)
			acc -= A[ii][j] * x[j];
		x[ii] = acc / A[ii][ii];
	}
}

} // namespace

std::vector<Rational> mc_values(const NumMdp &m, const std::vector<int> &choice)
{
	std::vector<Rational> v(m.n);
	auto reach = can_reach(m, &choice);
	std::vector<char> alive(m.n);
	for (int s = 0; s < m.n; s++) {
		if (m.target[s])
			v[s] = 1;
		alive[s] = reach[s] && !m.target[s];
	}
	std::vector<int> pos(m.n, -1);
	for (const auto &comp : sccs(m, choice, alive)) {
		if (comp.size() == 1) {
			int s = comp[0];
			Rational self = 0, acc = 0;
			for (const auto &[t, p] : m.rows[s][choice[s]].succ) {
				if (t == s)
					self += p;
				else
					acc += p * v[t];
			}
			v[s] = self == 0 ? acc : acc / (1 - self);
			continue;
		}
		size_t n = comp.size();
		for (size_t i = 0; i < n; i++)
			pos[comp[i]] = static_cast<int>(i);
		std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
		std::vector<Rational> b(n);
		for (size_t i = 0; i < n; i++)
			for (const auto &[t, p] : m.rows[comp[i]][choice[comp[i]]].succ) {
				if (pos[t] >= 0)
					A[i][pos[t]] += p;
				else
					b[i] += p * v[t];
			}
		std::vector<Rational> x;
		if (!solve_block_fast(A, b, x))
			solve_block_exact(A, b, x);
		for (size_t i = 0; i < n; i++) {
			v[comp[i]] = x[i];
			pos[comp[i]] = -1;
		}
	}
	return v;
}

Rational reach_prob_mc(const Pmdp &m, const StateSet &target)
{
	if (!m.is_parameter_free())
		throw ModelError("reach_prob_mc needs a parameter-free model; instantiate it first");
	if (!m.is_pmc())
		throw ModelError("reach_prob_mc needs a Markov chain; resolve nondeterminism with a scheduler");
	CompiledPmdp cm(m, target);
	NumMdp nm = cm.instantiate(std::vector<Rational>{});
	for (int s = 0; s < nm.n; s++) {
		Rational sum = 0;
		for (const auto &[t, p] : nm.rows[s][0].succ) {
			if (p < 0)
				throw ModelError("negative probability out of '" + cm.state_names()[s] + "'");
			sum += p;
		}
		if (sum != 1)
			throw ModelError("row of '" + cm.state_names()[s] + "' sums to " + to_string(sum));
	}
	return mc_values(nm, std::vector<int>(nm.n, 0))[nm.init];
}

} // namespace psyn
