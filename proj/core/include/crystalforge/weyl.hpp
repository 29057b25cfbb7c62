#pragma once

#include <memory>
#include <string>
#include <vector>

#include "crystalforge/errors.hpp"

namespace cf {

using IVec = std::vector<long>;
using IMat = std::vector<IVec>;
using Word = std::vector<int>;

enum class GroupKind { GL, SL, FoldedC2, D4 };

// Simple roots and coroots as integer vectors in an ambient lattice Z^n; the
// pairing is the dot product. Indices are the datum's labels (1-based for
// types A and folded C2, {0,1,2,3} with 0 central for D4).
struct RootDatum {
  GroupKind kind;
  int n = 0;
  std::string name;
  std::vector<int> labels;
  IMat roots;
  IMat coroots;

  static std::shared_ptr<const RootDatum> GL(int n);
  static std::shared_ptr<const RootDatum> SL(int n);
  static std::shared_ptr<const RootDatum> foldedC2();
  static std::shared_ptr<const RootDatum> D4();
  static std::shared_ptr<const RootDatum> byName(const std::string& name);

  int rank() const { return int(labels.size()); }
  int pos(int label) const;  // throws UnsupportedIndex
  bool hasLabel(int label) const;
  const IVec& root(int label) const { return roots[pos(label)]; }
  const IVec& coroot(int label) const { return coroots[pos(label)]; }
  long cartan(int i, int j) const;  // <alpha_i^v, alpha_j>
  // Coxeter exponent m_ij (1 when i == j).
  int braidOrder(int i, int j) const;
  // Canonical representative of a character (kills the kernel of the ambient encoding).
  IVec charKey(const IVec& lambda) const;
  IVec reflectCochar(int i, const IVec& v) const;
  IVec reflectChar(int i, const IVec& lambda) const;
};

using DatumPtr = std::shared_ptr<const RootDatum>;

long dot(const IVec& a, const IVec& b);

class WeylElt {
 public:
  WeylElt() = default;
  static WeylElt identity(const DatumPtr& d);
  // Product of the simple reflections of `word` (need not be reduced).
  static WeylElt fromWord(const DatumPtr& d, const Word& word);
  static WeylElt longest(const DatumPtr& d, const std::vector<int>& J);
  static WeylElt longest(const DatumPtr& d);

  const DatumPtr& datum() const { return d_; }
  const Word& word() const { return word_; }  // lexicographically smallest reduced word
  int length() const { return int(word_.size()); }
  const IVec& canonical() const { return canon_; }

  WeylElt inverse() const;
  WeylElt operator*(const WeylElt& o) const;
  bool operator==(const WeylElt& o) const { return canon_ == o.canon_; }
  bool operator!=(const WeylElt& o) const { return !(*this == o); }
  bool operator<(const WeylElt& o) const { return canon_ < o.canon_; }

  IVec applyCochar(const IVec& v) const;
  IVec applyChar(const IVec& lambda) const;
  bool hasLeftDescent(int i) const;
  bool hasRightDescent(int i) const;
  // Image of basis vector e_k for type A: w(e_k) = e_{perm[k]} (0-based).
  std::vector<int> permutation() const;
  std::string str() const;  // e.g. "s1s2", "e"

 private:
  DatumPtr d_;
  IVec canon_;
  Word word_;
};

std::vector<WeylElt> allElements(const DatumPtr& d);
std::vector<Word> reducedWords(const WeylElt& w, size_t cap = 100000);
bool isReduced(const DatumPtr& d, const Word& word);
WeylElt demazure(const WeylElt& a, const WeylElt& b);
WeylElt demazureOfWord(const DatumPtr& d, const Word& word);
WeylElt projectJ(const WeylElt& w, const std::vector<int>& J);
// w_{L_J, L_J'} = w0^{L_J} * w0^{L_J'} (see ledger on the ordering).
WeylElt wLevi(const DatumPtr& d, const std::vector<int>& J, const std::vector<int>& Jprime);
// Explicit (s_m..s_1)(s_{m+1}..s_2)...(s_{m+n-1}..s_n) in GL(m+n).
Word wmnWord(int m, int n);

// Saturated sublattice of the coroot lattice, rows = basis vectors in ambient coordinates.
struct CochLattice {
  int ambient = 0;
  IMat basis;
  int rank() const { return int(basis.size()); }
  bool contains(const IVec& v) const;
  bool contains(const CochLattice& o) const;
  bool operator==(const CochLattice& o) const { return contains(o) && o.contains(*this); }
};

// Saturation (within the coroot lattice of d) of the span of `gens`.
CochLattice saturateInCoroots(const DatumPtr& d, const IMat& gens);
CochLattice latticeTw(const WeylElt& w);
CochLattice applyToLattice(const WeylElt& w, const CochLattice& L);
CochLattice latticeSum(const DatumPtr& d, const CochLattice& a, const CochLattice& b);
CochLattice tildeTorusBase(const DatumPtr& d, int i);
CochLattice tildeTorusSeq(const DatumPtr& d, const Word& seq);

struct SpecialReport {
  bool special;
  int l;
  int lProj;
  int rank;
};
SpecialReport isSpecial(const WeylElt& w, const std::vector<int>& J);

struct ZetaReport {
  std::vector<int> I;                        // I(w)
  std::vector<std::pair<int, int>> zeta;     // (i, zeta(i))
  std::vector<std::vector<int>> orbits;      // o_w(i) for each label i (sorted)
  std::vector<std::vector<int>> basis;       // deduplicated supports of chi_{o(i)}
};
ZetaReport zetaOrbitsBasis(const WeylElt& w);

// Integer Smith-type diagonalisation: returns D and W with rows of W unimodular
// such that rowspace(M) = span{d_k * W_k}.
struct SmithResult {
  IVec diag;  // nonzero diagonal entries, in order
  IMat W;     // inverse of the column transform
};
SmithResult smithRows(const IMat& M, int cols);

std::string wordToString(const Word& w);
Word parseWord(const std::string& s);  // "1,2,1" or "s1,s2"

}  // namespace cf
