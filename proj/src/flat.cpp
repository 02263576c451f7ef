#include "chowgamma/flat.hpp"

#include "chowgamma/error.hpp"

namespace chowgamma {

std::vector<int> elements_of(Mask m) {
  std::vector<int> out;
  out.reserve(popcount(m));
  for_each_element(m, [&](int e) { out.push_back(e); });
  return out;
}

Mask squeeze(Mask m, Mask keep) {
  Mask out = 0;
  int pos = 0;
  for_each_element(keep, [&](int e) {
    if ((m >> e) & 1u) out |= bit(pos);
    ++pos;
  });
  return out;
}

Mask expand(Mask m, Mask keep) {
  Mask out = 0;
  int pos = 0;
  for_each_element(keep, [&](int e) {
    if ((m >> pos) & 1u) out |= bit(e);
    ++pos;
  });
  return out;
}

Flat make_flat(std::initializer_list<int> elements) {
  Mask m = 0;
  for (int e : elements) m |= bit(e);
  return Flat{m};
}

std::string to_string(Flat f) {
  std::string s = "{";
  bool first = true;
  for_each_element(f.bits, [&](int e) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  });
  return s + "}";
}

std::string to_string(const std::vector<Flat>& fs) {
  std::string s = "[";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) s += ",";
    s += to_string(fs[i]);
  }
  return s + "]";
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidMatroid: return "InvalidMatroid";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::NotAFlat: return "NotAFlat";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::NotUpwardClosed: return "NotUpwardClosed";
    case ErrorKind::NotMeetClosed: return "NotMeetClosed";
    case ErrorKind::MissingIrreducible: return "MissingIrreducible";
    case ErrorKind::JoinClosureViolation: return "JoinClosureViolation";
    case ErrorKind::NotGCompatible: return "NotGCompatible";
    case ErrorKind::ImproperCut: return "ImproperCut";
    case ErrorKind::CutContainsAtom: return "CutContainsAtom";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::NotFlag: return "NotFlag";
    case ErrorKind::Stuck: return "Stuck";
    case ErrorKind::NotUnique: return "NotUnique";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::NotNestedLocal: return "NotNestedLocal";
    case ErrorKind::RankNotOne: return "RankNotOne";
    case ErrorKind::NotMaximal: return "NotMaximal";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::NotPalindromic: return "NotPalindromic";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::MixedFactorStep: return "MixedFactorStep";
    case ErrorKind::NoBinaryFiltration: return "NoBinaryFiltration";
    case ErrorKind::FiberMismatch: return "FiberMismatch";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::vector<Flat> witness)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      witness_(std::move(witness)) {}

}  // namespace chowgamma
