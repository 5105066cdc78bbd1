#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cellkit/cartan.hpp"
#include "cellkit/ring.hpp"

namespace cellkit {

using Word = std::vector<int>;
using Matrix = std::vector<std::vector<CycScalar>>;
using RootVec = std::vector<CycScalar>;
using Perm = std::vector<uint16_t>;

struct DeskCap {
  uint64_t max_enumerate = 400000;  // elements materialised at once
  uint64_t max_order = 10000000;    // element-free operations
};

struct Fusion {
  std::string parent_name;
  std::vector<int> subJ;
  bool parabolic = false;
};

class CoxeterGroup {
 public:
  explicit CoxeterGroup(CartanMatrix c, size_t max_roots = 20000);

  int rank() const { return static_cast<int>(cartan_.size()); }
  const CartanMatrix& cartan() const { return cartan_; }
  const CoxeterMatrix& coxmat() const { return coxmat_; }
  const TypeDecomposition& typedec() const { return typedec_; }
  const std::string& name() const { return name_; }
  bool finite() const { return finite_; }

  // Finite groups only.
  int N() const { return n_pos_; }
  uint64_t order() const { return order_; }
  std::vector<int> degrees() const { return cellkit::degrees(typedec_); }
  const std::vector<RootVec>& roots() const { return roots_; }
  const std::vector<Perm>& permgens() const { return permgens_; }
  int root_index(const RootVec& v) const;
  // Word w with roots()[i] = alpha_s . w, s being the returned first entry.
  const std::pair<int, Word>& root_word(int i) const { return root_words_[i]; }
  Word reflection_word(int root) const;

  const std::vector<Matrix>& matgens() const { return matgens_; }
  Matrix word_to_mat(const Word& w) const;
  Word mat_to_word(const Matrix& m) const;
  std::pair<std::vector<int>, std::vector<int>> descent_sets_mat(const Matrix& m) const;

  Perm identity_perm() const;
  Perm word_to_perm(const Word& w) const;
  Perm mult_perm(const Perm& a, const Perm& b) const;  // element a*b
  Perm inverse_perm(const Perm& p) const;
  Word perm_to_word(const Perm& p) const;
  int perm_length(const Perm& p) const;
  bool is_left_descent(const Perm& p, int s) const { return p[s] >= n_pos_; }

  RootVec apply_root(const RootVec& v, int s) const;  // v . s

 private:
  CartanMatrix cartan_;
  CoxeterMatrix coxmat_;
  TypeDecomposition typedec_;
  std::string name_;
  bool finite_ = false;
  int n_pos_ = 0;
  uint64_t order_ = 0;
  std::vector<RootVec> roots_;
  std::vector<std::pair<int, Word>> root_words_;
  std::vector<Perm> permgens_;
  std::vector<Matrix> matgens_;
  std::unordered_map<std::string, int> root_lookup_;
};

std::string root_key(const RootVec& v);

CoxeterGroup build(const CartanMatrix& c);
WeightFunction weightfn_validate(const CoxeterGroup& W, const std::vector<int>& weights);

// All elements of a finite group, indexed by (length, canonical word).
class ElementTable {
 public:
  explicit ElementTable(const CoxeterGroup& W, const DeskCap& cap = {});

  const CoxeterGroup& group() const { return *W_; }
  int size() const { return static_cast<int>(len_.size()); }
  int length(int w) const { return len_[w]; }
  int lmul(int s, int w) const { return lmul_[static_cast<size_t>(w) * r_ + s]; }
  int rmul(int w, int s) const { return rmul_[static_cast<size_t>(w) * r_ + s]; }
  int inverse(int w) const { return inv_[w]; }
  int identity() const { return 0; }
  int longest() const { return size() - 1; }
  bool left_descent(int s, int w) const { return len_[lmul(s, w)] < len_[w]; }
  bool right_descent(int w, int s) const { return len_[rmul(w, s)] < len_[w]; }
  int min_left_descent(int w) const { return minl_[w]; }
  uint32_t left_descent_mask(int w) const;
  uint32_t right_descent_mask(int w) const;
  const uint16_t* perm(int w) const { return &perms_[static_cast<size_t>(w) * nroots_]; }
  Word word(int w) const;
  int index_of_word(const Word& w) const;
  int index_of_perm(const Perm& p) const;
  int mult(int a, int b) const;
  // Elements with length boundaries: elements of length k are [level_start(k), level_start(k+1)).
  int level_start(int k) const { return lvl_[k]; }
  int max_length() const { return static_cast<int>(lvl_.size()) - 2; }

 private:
  std::string key_of(const uint16_t* p) const;
  const CoxeterGroup* W_;
  int r_, nroots_;
  std::vector<uint16_t> perms_;
  std::vector<int> len_, lmul_, rmul_, inv_, minl_, lvl_;
  std::unordered_map<std::string, int> lookup_;
};

Word word_to_canonical(const CoxeterGroup& W, const Word& w);
std::pair<std::vector<int>, std::vector<int>> descent_sets(const CoxeterGroup& W, const Word& w);
bool bruhat_leq(const ElementTable& T, int y, int w);
// For each w, bitset of {y : y <= w}; words of 64 bits per row.
class BruhatTable {
 public:
  explicit BruhatTable(const ElementTable& T);
  bool leq(int y, int w) const {
    return (bits_[static_cast<size_t>(w) * stride_ + (y >> 6)] >> (y & 63)) & 1ULL;
  }

 private:
  size_t stride_;
  std::vector<uint64_t> bits_;
};

int longest_element(const ElementTable& T);

// Distinguished coset representatives for the parabolic subgroup generated by J.
std::vector<int> coset_reps(const ElementTable& T, const std::vector<int>& J);
bool in_parabolic(const ElementTable& T, int w, uint32_t Jmask);
// w = x u with x in X, u in W_J.
std::pair<int, int> coset_decompose(const ElementTable& T, int w, uint32_t Jmask);

enum class DeodharCase { Down, Up, Cross };
struct Deodhar {
  DeodharCase kind;
  int t = -1;  // for Cross
};
Deodhar deodhar_case(const ElementTable& T, uint32_t Jmask, int x, int s);

struct ConjClass {
  int rep;
  int size;
  std::vector<int> elements;
};
std::vector<ConjClass> conjugacy_classes(const ElementTable& T);
std::vector<int> involutions(const ElementTable& T);

std::pair<CoxeterGroup, Fusion> reflection_subgroup(const CoxeterGroup& W,
                                                    const std::vector<int>& root_indices);

inline uint32_t mask_of(const std::vector<int>& J) {
  uint32_t m = 0;
  for (int j : J) m |= 1u << j;
  return m;
}

}  // namespace cellkit
