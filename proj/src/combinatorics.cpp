#include "renormlab/combinatorics.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "renormlab/errors.hpp"

namespace renormlab {

namespace {
// Remainders below this are numerically rational: further digits would be
// noise from the division.
const Real kRationalTol = Real(1e-12) * kTolScale;
}  // namespace

CFExpansion cf_expand(Real x, int depth) {
  if (!(x > 0 && x < 1)) throw DomainError("cf_expand: x must lie in (0, 1)");
  if (depth < 1 || depth > 40)
    throw DomainError("cf_expand: depth must be in [1, 40]");
  CFExpansion out;
  Real r = x;
  for (int i = 0; i < depth; ++i) {
    if (r < kRationalTol) {
      out.exact = false;  // truncated: remainder is numerically rational
      return out;
    }
    Real inv = 1 / r;
    Real fl = std::floor(inv);
    int a = int(fl);
    r = inv - fl;
    out.entries.push_back(a);
  }
  out.exact = true;
  return out;
}

Real cf_value(const std::vector<int>& entries) {
  if (entries.empty()) throw CombinatoricsError("cf_value: empty expansion");
  for (int a : entries)
    if (a < 1) throw CombinatoricsError("cf_value: entries must be positive");
  Real v = 0;
  for (auto it = entries.rbegin(); it != entries.rend(); ++it)
    v = 1 / (Real(*it) + v);
  return v;
}

Real gauss(Real x) {
  if (x == 0) throw DomainError("gauss: undefined at 0");
  Real inv = 1 / std::abs(x);
  return inv - std::floor(inv);
}

Real quadratic_irrational(const std::vector<int>& word) {
  if (word.empty()) throw CombinatoricsError("quadratic_irrational: empty word");
  for (int a : word)
    if (a < 1)
      throw CombinatoricsError("quadratic_irrational: entries must be positive");

  // x = T_{a1} ... T_ap (x) with T_a(y) = 1/(a+y); each T_a acts by the
  // Moebius matrix [[0,1],[1,a]], composed exactly in integers.
  long long A = 1, B = 0, C = 0, D = 1;
  for (int a : word) {
    long long nA = B;
    long long nB = A + (long long)a * B;
    long long nC = D;
    long long nD = C + (long long)a * D;
    if (std::abs(nB) > (1LL << 60) || std::abs(nD) > (1LL << 60))
      throw CombinatoricsError(
          "quadratic_irrational: word too long for exact arithmetic");
    A = nA;
    B = nB;
    C = nC;
    D = nD;
  }
  // x = (A x + B) / (C x + D)  =>  C x^2 + (D - A) x - B = 0
  long long P = C, Q = D - A, R = -B;
  Real disc = Real(Q) * Real(Q) - 4 * Real(P) * Real(R);
  Real x = (-Real(Q) + std::sqrt(disc)) / (2 * Real(P));
  // one Newton step in working precision
  Real f = Real(P) * x * x + Real(Q) * x + Real(R);
  Real df = 2 * Real(P) * x + Real(Q);
  if (df != 0) x -= f / df;
  return x;
}

bool is_bounded_type(const std::vector<int>& entries, int n) {
  for (int a : entries)
    if (a > n) return false;
  return true;
}

SymbolWord parse_cf_word(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw CombinatoricsError("empty continued-fraction word");

  SymbolWord w;
  if (s.front() == '(') {
    if (s.back() != ')')
      throw CombinatoricsError("unterminated periodic word: " + text);
    s = s.substr(1, s.size() - 2);
    w.periodic = true;
  }
  if (s.empty()) throw CombinatoricsError("empty continued-fraction word");

  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw CombinatoricsError("malformed word: " + text);
    size_t pos = 0;
    int v;
    try {
      v = std::stoi(item, &pos);
    } catch (...) {
      throw CombinatoricsError("bad entry '" + item + "' in word: " + text);
    }
    if (pos != item.size())
      throw CombinatoricsError("bad entry '" + item + "' in word: " + text);
    if (v < 1)
      throw CombinatoricsError("entry " + std::to_string(v) +
                               " outside alphabet {1,..}: " + text);
    w.letters.push_back(v);
  }
  if (w.letters.empty()) throw CombinatoricsError("empty continued-fraction word");
  if (s.back() == ',') throw CombinatoricsError("malformed word: " + text);
  return w;
}

std::vector<int> rotate_right(const std::vector<int>& w, int k) {
  if (w.empty()) return w;
  int p = int(w.size());
  k = ((k % p) + p) % p;
  std::vector<int> out(p);
  for (int i = 0; i < p; ++i) out[(i + k) % p] = w[i];
  return out;
}

}  // namespace renormlab
