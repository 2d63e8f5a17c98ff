#pragma once

#include <vector>

#include "merocurve/newton.hpp"

namespace merocurve {

// Characteristic data of a branch of degree n = m_0, read off the exponent
// support of its root z on the X^n grid:
//   d_1 = m_0 = q_0 = s_0 = r_0 = n,   m_1 = q_1 = min Supp z,
//   d_i = gcd(m_0, ..., m_{i-1}),      m_i = min(Supp z \ d_i Z)   (i >= 2),
//   q_i = m_i - m_{i-1},  s_i = q_1 d_1 + ... + q_i d_i,  r_i = s_i / d_i,
//   c_i = m_i / n.
// h is the least index with d_{h+1} = 1; h = 0 exactly for the branch Y.
struct CharSeq {
  long h = 0;
  std::vector<long> m;  // m_0 .. m_h
  std::vector<long> d;  // d_0 = 0, d_1, ..., d_{h+1}
  std::vector<long> q;  // q_0 = n, q_1, ..., q_h
  std::vector<long> s;
  std::vector<long> r;
  std::vector<Rat> c;  // c_1 .. c_h, strictly increasing

  long n() const { return m[0]; }
};

// A point of the level-lambda edge of the branch: U = n, W/V = lambda, and
// (U, V, W) lies on the edge of z.
struct EdgeSample {
  Series z;
  long U = 1;
  long V = 1;
  long W = 0;
};

// Everything attached to a branch at one contact level lambda.
//   p / pstar   count the c_i strictly below / weakly below lambda,
//   D = n/d_{p+1}, Dstar = n/d_{pstar+1},
//   S = (s_p + (n lambda - m_p) d_{p+1}) / n^2, or lambda when p = 0,
//   A = prod_{i<=p} ((d_i/d_{i+1}) z[m_i]^{d_i/d_{i+1} - 1})^{d_{i+1} D / n},
//   Ahat = A^{n/D},  E = Y^{Dstar/D} - E0 with E0 = z[n lambda]^{Dstar/D},
//   t / tstar are the exact monic annihilators of the root truncated
//   strictly below / through exponent n lambda.
struct LambdaData {
  Rat lambda;
  long n = 1;
  long p = 0;
  long pstar = 0;
  long D = 1;
  long Dstar = 1;
  Rat S;
  Num A;
  Num Ahat;
  Num E0;
  MPoly t;
  MPoly tstar;
  std::vector<EdgeSample> edge_samples;

  KPoly E() const;     // Y^(Dstar/D) - E0
  KPoly Ehat() const;  // E^(n/Dstar)
};

// Reads the sequences from the stored prefix. Branch invariants (certified
// prefix, minimal ramification) make this exact without extra refinement.
CharSeq char_seq(const Branch& b);

// Assembles the lambda-level data, refining the root past exponent
// n*lambda on demand.
LambdaData lambda_data(const Branch& b, const Rat& lambda);

// Checks the deformation identity at an edge sample: with f the monic
// irreducible factor of b and zdd = (truncation of z below W U / V) + X^W Y,
//   ord_X f(X^V, zdd) = S n V   and   inco_X f(X^V, zdd) = Ahat * Ehat.
// Throws NotOnEdge for samples off the edge of z.
bool verify_edge_deformation(const Branch& b, const Rat& lambda,
                             const EdgeSample& sample);

}  // namespace merocurve
