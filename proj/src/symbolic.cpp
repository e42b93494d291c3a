#include "mfent/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "mfent/errors.hpp"

namespace mfent {

namespace {

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

char digit_char(Symbol s) { return static_cast<char>(s < 10 ? '0' + s : 'a' + (s - 10)); }

// Primitivity: some power A^p > 0 with p <= m^2 (Wielandt gives (m-1)^2 + 1).
bool has_positive_power(const Eigen::MatrixXi& a) {
  const Eigen::Index m = a.rows();
  Eigen::MatrixXi step = (a.array() != 0).cast<int>();
  Eigen::MatrixXi power = step;
  for (Eigen::Index p = 1; p <= m * m; ++p) {
    if ((power.array() > 0).all()) return true;
    power = ((power * step).array() > 0).cast<int>();
  }
  return false;
}

}  // namespace

Word Word::parse(std::string_view text) {
  std::vector<Symbol> out;
  if (text.find(',') != std::string_view::npos) {
    std::string token;
    std::istringstream in{std::string(text)};
    while (std::getline(in, token, ',')) {
      if (token.empty()) throw DomainError("empty symbol in word '" + std::string(text) + "'");
      std::size_t used = 0;
      int v = -1;
      try {
        v = std::stoi(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size() || v < 0)
        throw DomainError("bad symbol '" + token + "' in word '" + std::string(text) + "'");
      out.push_back(v);
    }
  } else {
    for (char c : text) {
      const int v = digit_value(c);
      if (v < 0)
        throw DomainError("bad symbol '" + std::string(1, c) + "' in word '" + std::string(text) + "'");
      out.push_back(v);
    }
  }
  return Word(std::move(out));
}

Word Word::prefix(std::size_t length) const {
  if (length > size()) throw DomainError("prefix longer than word");
  return Word(std::vector<Symbol>(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(length)));
}

Word Word::extended(Symbol s) const {
  std::vector<Symbol> out = symbols_;
  out.push_back(s);
  return Word(std::move(out));
}

Word Word::prepended(Symbol s) const {
  std::vector<Symbol> out;
  out.reserve(size() + 1);
  out.push_back(s);
  out.insert(out.end(), symbols_.begin(), symbols_.end());
  return Word(std::move(out));
}

bool Word::is_prefix_of(const Word& other) const {
  return size() <= other.size() && std::equal(symbols_.begin(), symbols_.end(), other.symbols_.begin());
}

std::string Word::str(int alphabet_size) const {
  std::string out;
  if (alphabet_size <= 36) {
    for (Symbol s : symbols_) out.push_back(digit_char(s));
    return out;
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(symbols_[i]);
  }
  return out;
}

DepthOffset::DepthOffset(int k) : k_(k) {
  if (k < 0) throw DomainError("depth offset k must be >= 0, got " + std::to_string(k));
}

double DepthOffset::epsilon() const { return std::ldexp(1.0, -k_); }

ShiftSpace::ShiftSpace(Eigen::MatrixXi transitions) : transitions_(std::move(transitions)) {
  if (transitions_.rows() != transitions_.cols())
    throw DomainError("transition matrix must be square");
  if (transitions_.rows() < 2) throw DomainError("alphabet size must be >= 2");
  if (((transitions_.array() != 0) && (transitions_.array() != 1)).any())
    throw DomainError("transition matrix entries must be 0 or 1");
  for (Eigen::Index i = 0; i < transitions_.rows(); ++i) {
    if (transitions_.row(i).sum() == 0)
      throw DomainError("dead symbol " + std::to_string(i) + ": zero row in transition matrix");
    if (transitions_.col(i).sum() == 0)
      throw DomainError("dead symbol " + std::to_string(i) + ": zero column in transition matrix");
  }
  full_ = (transitions_.array() == 1).all();
  irreducible_ = has_positive_power(transitions_);
}

ShiftSpace ShiftSpace::full(int alphabet_size) {
  if (alphabet_size < 2) throw DomainError("alphabet size must be >= 2");
  return ShiftSpace(Eigen::MatrixXi::Ones(alphabet_size, alphabet_size));
}

bool ShiftSpace::admissible(const Word& w) const {
  const int m = alphabet_size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] >= m) return false;
    if (i > 0 && !allows(w[i - 1], w[i])) return false;
  }
  return true;
}

void ShiftSpace::require_admissible(const Word& w) const {
  if (!admissible(w)) throw DomainError("word '" + w.str(alphabet_size()) + "' is not admissible");
}

ShiftSpace make_shift(int alphabet_size, const Eigen::MatrixXi& transitions) {
  if (transitions.rows() != alphabet_size || transitions.cols() != alphabet_size)
    throw DomainError("transition matrix is " + std::to_string(transitions.rows()) + "x" +
                      std::to_string(transitions.cols()) + ", expected " + std::to_string(alphabet_size) +
                      "x" + std::to_string(alphabet_size));
  return ShiftSpace(transitions);
}

std::vector<Word> children(const ShiftSpace& space, const Word& w) {
  std::vector<Word> out;
  for (Symbol s = 0; s < space.alphabet_size(); ++s) {
    if (w.empty() || space.allows(w.back(), s)) out.push_back(w.extended(s));
  }
  return out;
}

std::vector<Word> admissible_words(const ShiftSpace& space, std::size_t length) {
  std::vector<Word> level{Word{}};
  for (std::size_t d = 0; d < length; ++d) {
    std::vector<Word> next;
    for (const Word& w : level) {
      for (Word& c : children(space, w)) next.push_back(std::move(c));
    }
    level = std::move(next);
  }
  return level;
}

Word bowen_cylinder(const Word& x, int n, DepthOffset k) {
  if (n < 0) throw DomainError("Bowen order must be >= 0");
  const std::size_t need = static_cast<std::size_t>(n + k.value());
  if (x.size() < need)
    throw DomainError("point prefix has length " + std::to_string(x.size()) + ", need at least " +
                      std::to_string(need));
  return x.prefix(need);
}

CylinderSet::CylinderSet(ShiftSpace space) : space_(std::move(space)) {}

CylinderSet::CylinderSet(ShiftSpace space, std::vector<Word> members)
    : space_(std::move(space)), members_(std::move(members)) {
  for (const Word& w : members_) space_.require_admissible(w);
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  // In lexicographic order a prefix sorts directly before some extension of it.
  for (std::size_t i = 0; i + 1 < members_.size(); ++i) {
    if (members_[i].is_prefix_of(members_[i + 1]))
      throw DomainError("cylinder set is not an antichain: '" + members_[i].str(space_.alphabet_size()) +
                        "' is a prefix of '" + members_[i + 1].str(space_.alphabet_size()) + "'");
  }
  canonicalize();
}

CylinderSet CylinderSet::whole(ShiftSpace space) {
  return CylinderSet(std::move(space), std::vector<Word>{Word{}});
}

void CylinderSet::canonicalize() {
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<Word, std::vector<Word>> by_parent;
    for (const Word& w : members_) {
      if (!w.empty()) by_parent[w.parent()].push_back(w);
    }
    for (auto& [parent, kids] : by_parent) {
      if (kids == children(space_, parent)) {
        std::erase_if(members_, [&](const Word& w) { return !w.empty() && w.parent() == parent; });
        members_.push_back(parent);
        changed = true;
      }
    }
    std::sort(members_.begin(), members_.end());
  }
}

std::size_t CylinderSet::max_depth() const {
  std::size_t d = 0;
  for (const Word& w : members_) d = std::max(d, w.size());
  return d;
}

bool CylinderSet::covers(const Word& w) const {
  return std::any_of(members_.begin(), members_.end(), [&](const Word& u) { return u.is_prefix_of(w); });
}

bool CylinderSet::intersects(const Word& w) const {
  return std::any_of(members_.begin(), members_.end(),
                     [&](const Word& u) { return u.is_prefix_of(w) || w.is_prefix_of(u); });
}

CylinderSet CylinderSet::restricted_to(const Word& w) const {
  if (covers(w)) return CylinderSet(space_, {w});
  std::vector<Word> kept;
  for (const Word& u : members_) {
    if (w.is_prefix_of(u)) kept.push_back(u);
  }
  return CylinderSet(space_, std::move(kept));
}

bool CylinderSet::subset_of(const CylinderSet& other) const {
  return std::all_of(members_.begin(), members_.end(), [&](const Word& u) { return other.covers(u); });
}

CylinderSet CylinderSet::united(const CylinderSet& other) const {
  if (!(space_ == other.space_)) throw DomainError("cylinder sets live in different shift spaces");
  std::vector<Word> merged;
  for (const Word& u : members_) {
    if (!other.covers(u) || std::find(other.members_.begin(), other.members_.end(), u) != other.members_.end())
      merged.push_back(u);
  }
  for (const Word& u : other.members_) {
    if (!covers(u)) merged.push_back(u);
  }
  return CylinderSet(space_, std::move(merged));
}

bool intersects(const CylinderSet& K, const Word& w) { return K.intersects(w); }

namespace {

// [w] meets A \ B.
bool meets_difference(const CylinderSet& A, const CylinderSet& B, const Word& w) {
  if (B.covers(w)) return false;
  if (A.covers(w)) return true;
  if (!A.intersects(w)) return false;
  for (const Word& c : children(A.space(), w)) {
    if (meets_difference(A, B, c)) return true;
  }
  return false;
}

// Least agreement depth with B over points of (A \ B) inside [w]; [w] meets B.
std::size_t least_agreement(const CylinderSet& A, const CylinderSet& B, const Word& w) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const Word& c : children(A.space(), w)) {
    if (!meets_difference(A, B, c)) continue;
    best = std::min(best, B.intersects(c) ? least_agreement(A, B, c) : w.size());
  }
  return best;
}

double directed_distance(const CylinderSet& A, const CylinderSet& B) {
  if (!meets_difference(A, B, Word{})) return 0.0;
  return std::ldexp(1.0, -static_cast<int>(least_agreement(A, B, Word{})));
}

}  // namespace

double hausdorff_distance(const CylinderSet& A, const CylinderSet& B) {
  if (!(A.space() == B.space())) throw DomainError("cylinder sets live in different shift spaces");
  if (A.empty() && B.empty()) return 0.0;
  if (A.empty() || B.empty()) return 1.0;
  return std::max(directed_distance(A, B), directed_distance(B, A));
}

}  // namespace mfent
