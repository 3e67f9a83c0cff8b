#include "cantordiff/orbit_search.hpp"

namespace cantordiff {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::In: return "in";
    case Verdict::Out: return "out";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace cantordiff
