#include "cantordiff/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <unordered_map>

#include "cantordiff/errors.hpp"
#include "cantordiff/full_interval.hpp"
#include "cantordiff/kernels.hpp"
#include "cantordiff/lattice.hpp"

namespace cantordiff {

namespace {

// Exact coordinates used by the automaton and the population filter.
// Depth-k classes are stored as D*rho^k*b_w; a depth-k piece covers
// [hull_lo + s, hull_hi + s] in the same units.
struct ScalarCoords {
  using T = Scalar;
  Scalar rho;
  Scalar hull_lo, hull_hi;
  std::vector<Scalar> first;

  explicit ScalarCoords(const LineIFS& ifs)
      : rho(ifs.ratio.inverse()), hull_lo(ifs.hull.lo), hull_hi(ifs.hull.hi) {
    for (const auto& b : ifs.offsets) first.push_back(rho * b);
  }
  T add(const T& x, const T& y) const { return x + y; }
  T sub(const T& x, const T& y) const { return x - y; }
  T mul(const T& x, const T& y) const { return x * y; }
  bool less(const T& x, const T& y) const { return x < y; }
  std::size_t hash(const T& x) const { return x.hash(); }
  T from_scalar(const Scalar& x) const { return x; }
  Scalar to_scalar(const T& x) const { return x; }
};

struct LatticeCoords {
  using T = ZPoint;
  const LatticeSystem* sys;
  ZPoint rho, hull_lo, hull_hi;
  std::vector<ZPoint> first;

  explicit LatticeCoords(const LatticeSystem& s)
      : sys(&s), rho(s.rho), hull_lo(s.hull_lo), hull_hi(s.hull_hi), first(s.first) {}
  T add(const T& x, const T& y) const { return sys->ring.add(x, y); }
  T sub(const T& x, const T& y) const { return sys->ring.sub(x, y); }
  T mul(const T& x, const T& y) const { return sys->ring.mul(x, y); }
  bool less(const T& x, const T& y) const { return sys->ring.less(x, y); }
  std::size_t hash(const T& x) const { return ZPointHash{}(x); }
  T from_scalar(const Scalar& x) const { return sys->to_lattice(x); }
  Scalar to_scalar(const T& x) const { return sys->to_scalar(x); }
};

template <class C>
struct VecHash {
  const C* c;
  std::size_t operator()(const std::vector<typename C::T>& v) const {
    std::size_t h = v.size();
    for (const auto& x : v) h = h * 0x100000001b3ULL ^ c->hash(x);
    return h;
  }
};

constexpr std::size_t kMaxIslandPieces = 4096;

template <class C>
struct Interner {
  using T = typename C::T;
  std::unordered_map<std::vector<T>, std::size_t, VecHash<C>, std::equal_to<>> ids;
  std::vector<std::vector<T>> keys;
  std::size_t budget;

  Interner(const C& c, std::size_t b) : ids(16, VecHash<C>{&c}), budget(b) {}
  std::optional<std::size_t> intern(std::vector<T> key) {
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    if (keys.size() >= budget) return std::nullopt;
    ids.emplace(key, keys.size());
    keys.push_back(std::move(key));
    return keys.size() - 1;
  }
};

// A piece with left end o has children at rho*o + shift_i.
template <class C>
std::vector<typename C::T> child_shifts(const C& c) {
  std::vector<typename C::T> shift;
  for (const auto& f : c.first) shift.push_back(c.sub(c.add(c.hull_lo, f), c.mul(c.rho, c.hull_lo)));
  return shift;
}

template <class C>
NeighborAutomaton build_islands(const C& c, const LineIFS& ifs, std::size_t budget) {
  using T = typename C::T;
  const T len = c.sub(c.hull_hi, c.hull_lo);
  const std::vector<T> shift = child_shifts(c);
  NeighborAutomaton out;
  out.kind = AutomatonKind::Island;
  out.ratio = ifs.ratio;
  Interner<C> in(c, budget);
  in.intern({T{}});
  out.complete = true;
  for (std::size_t s = 0; s < in.keys.size() && out.complete; ++s) {
    std::vector<T> kids;
    for (const auto& o : in.keys[s]) {
      T base = c.mul(c.rho, o);
      for (const auto& sh : shift) kids.push_back(c.add(base, sh));
    }
    std::sort(kids.begin(), kids.end(), [&](const T& x, const T& y) { return c.less(x, y); });
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    std::map<std::size_t, long> row;
    std::size_t i = 0;
    while (i < kids.size()) {
      std::size_t j = i + 1;
      // Pieces at distance >= len do not overlap (touching ones stay apart).
      while (j < kids.size() && c.less(c.sub(kids[j], kids[j - 1]), len)) ++j;
      if (j - i > kMaxIslandPieces) {
        out.complete = false;  // islands keep growing
        break;
      }
      std::vector<T> key;
      for (std::size_t k = i; k < j; ++k) key.push_back(c.sub(kids[k], kids[i]));
      auto id = in.intern(std::move(key));
      if (!id) {
        out.complete = false;
      } else {
        row[*id] += 1;
      }
      i = j;
    }
    out.transitions.emplace_back(row.begin(), row.end());
  }
  // Rows for states never expanded stay empty.
  out.transitions.resize(in.keys.size());
  for (const auto& key : in.keys) {
    NeighborState st;
    for (const auto& x : key) st.positions.push_back(c.to_scalar(x));
    st.length = c.to_scalar(c.add(key.back(), len));
    st.pieces = key.size();
    out.states.push_back(std::move(st));
  }
  return out;
}

template <class C>
NeighborAutomaton build_neighbors(const C& c, const LineIFS& ifs, std::size_t budget) {
  using T = typename C::T;
  auto lt = [&](const T& x, const T& y) { return c.less(x, y); };
  const T len = c.sub(c.hull_hi, c.hull_lo);
  const std::vector<T> shift = child_shifts(c);
  NeighborAutomaton out;
  out.kind = AutomatonKind::Neighbor;
  out.ratio = ifs.ratio;
  // Key: sorted offsets of the overlapping neighbors (the piece itself is 0).
  Interner<C> in(c, budget);
  in.intern({});
  out.complete = true;
  for (std::size_t s = 0; s < in.keys.size(); ++s) {
    std::vector<T> parents = in.keys[s];
    parents.push_back(T{});
    std::sort(parents.begin(), parents.end(), lt);
    // Every child with the leftmost parent that produces it.
    std::vector<std::pair<T, bool>> kids;  // (position, owned by the piece at 0)
    for (const auto& x : parents) {
      T base = c.mul(c.rho, x);
      bool mine = x == T{};
      for (const auto& sh : shift) kids.emplace_back(c.add(base, sh), mine);
    }
    // Stable sort keeps the leftmost parent first among equal positions.
    std::stable_sort(kids.begin(), kids.end(), [&](const auto& x, const auto& y) { return lt(x.first, y.first); });
    std::vector<std::pair<T, bool>> uniq;
    for (const auto& k : kids) {
      if (uniq.empty() || !(uniq.back().first == k.first)) uniq.push_back(k);
    }
    std::map<std::size_t, long> row;
    std::size_t lo = 0;
    for (std::size_t i = 0; i < uniq.size(); ++i) {
      while (!lt(c.sub(uniq[i].first, uniq[lo].first), len)) ++lo;
      if (!uniq[i].second) continue;
      std::vector<T> key;
      for (std::size_t j = lo; j < uniq.size() && lt(c.sub(uniq[j].first, uniq[i].first), len); ++j) {
        if (j != i) key.push_back(c.sub(uniq[j].first, uniq[i].first));
      }
      auto id = in.intern(std::move(key));
      if (!id) {
        out.complete = false;
      } else {
        row[*id] += 1;
      }
    }
    out.transitions.emplace_back(row.begin(), row.end());
    if (!out.complete) break;
  }
  out.transitions.resize(in.keys.size());
  for (const auto& key : in.keys) {
    std::vector<T> all = key;
    all.push_back(T{});
    std::sort(all.begin(), all.end(), lt);
    NeighborState st;
    for (const auto& x : all) st.positions.push_back(c.to_scalar(x));
    st.length = c.to_scalar(c.add(c.sub(all.back(), all.front()), len));
    st.pieces = 1;
    out.states.push_back(std::move(st));
  }
  return out;
}

template <class C>
std::size_t population_with(const C& c, const Scalar& rho, const Interval& region, int n, RegionRule rule,
                            std::size_t budget) {
  using T = typename C::T;
  auto lt = [&](const T& x, const T& y) { return c.less(x, y); };
  auto le = [&](const T& x, const T& y) { return !c.less(y, x); };
  T qlo = c.from_scalar(rho * region.lo);
  T qhi = c.from_scalar(rho * region.hi);
  std::vector<T> cur{T{}};
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      qlo = c.mul(c.rho, qlo);
      qhi = c.mul(c.rho, qhi);
    }
    std::vector<T> next;
    for (const auto& d : cur) {
      T base = c.mul(c.rho, d);
      for (const auto& f : c.first) {
        T s = c.add(base, f);
        T lo = c.add(c.hull_lo, s);
        T hi = c.add(c.hull_hi, s);
        bool keep;
        if (k < n) {
          keep = le(lo, qhi) && le(qlo, hi);  // descendants stay inside the piece
        } else if (rule == RegionRule::MeetsInterior) {
          keep = lt(lo, qhi) && lt(qlo, hi);
        } else {
          keep = le(qlo, lo) && le(hi, qhi);
        }
        if (keep) next.push_back(s);
      }
    }
    std::sort(next.begin(), next.end(), lt);
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.size() > budget) {
      throw BudgetExceeded("region population at depth " + std::to_string(k) + " exceeds " + std::to_string(budget));
    }
    cur = std::move(next);
  }
  return cur.size();
}

// Tarjan's algorithm; components in reverse topological order.
std::vector<std::vector<std::size_t>> strongly_connected(const std::vector<std::vector<std::pair<std::size_t, long>>>& rows) {
  const std::size_t n = rows.size();
  std::vector<long> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  long counter = 0;
  // Iterative DFS: frames of (node, next edge).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, e] = frames.back();
      if (e < rows[v].size()) {
        std::size_t w = rows[v][e++].first;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

constexpr std::size_t kMaxDenseBlock = 4096;

SpectralResult block_radius(const std::vector<std::vector<std::pair<std::size_t, long>>>& rows,
                            const std::vector<std::size_t>& comp, double tolerance, int max_iterations) {
  const std::size_t m = comp.size();
  SpectralResult r;
  if (m == 1) {
    long self = 0;
    for (const auto& [j, w] : rows[comp[0]]) {
      if (j == comp[0]) self += w;
    }
    r.lo = r.hi = Rational(self);
    return r;
  }
  if (m > kMaxDenseBlock) {
    throw BudgetExceeded("strongly connected block of " + std::to_string(m) + " states is too large");
  }
  std::unordered_map<std::size_t, std::size_t> local;
  for (std::size_t i = 0; i < m; ++i) local[comp[i]] = i;
  std::vector<double> a(m * m, 0.0);  // column-major
  std::vector<std::vector<std::pair<std::size_t, long>>> block(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [j, w] : rows[comp[i]]) {
      auto it = local.find(j);
      if (it == local.end()) continue;
      a[it->second * m + i] += static_cast<double>(w);
      block[i].emplace_back(it->second, w);
    }
  }
  std::vector<double> x(m, 1.0), y(m);
  for (int it = 0; it < max_iterations; ++it) {
    kernels::shifted_matvec(a, m, x, y);
    auto b = kernels::ratio_bounds(y, x);
    double top = *std::max_element(y.begin(), y.end());
    for (std::size_t i = 0; i < m; ++i) x[i] = y[i] / top;
    r.iterations = it + 1;
    if (b.hi - b.lo <= tolerance * b.hi) break;
  }
  // Exact Collatz-Wielandt bounds for the block at the final positive iterate.
  bool first = true;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(x[i] > 0)) throw InvariantViolation("power iterate lost positivity");
    Rational s = 0;
    for (const auto& [j, w] : block[i]) s += Rational(w) * Rational(x[j]);
    Rational q = s / Rational(x[i]);
    if (first || q < r.lo) r.lo = q;
    if (first || q > r.hi) r.hi = q;
    first = false;
  }
  return r;
}

SpectralResult radius_sparse(const std::vector<std::vector<std::pair<std::size_t, long>>>& rows, double tolerance,
                             int max_iterations) {
  SpectralResult best;
  best.lo = best.hi = 0;
  for (const auto& comp : strongly_connected(rows)) {
    SpectralResult b = block_radius(rows, comp, tolerance, max_iterations);
    if (b.lo > best.lo) best.lo = b.lo;
    if (b.hi > best.hi) best.hi = b.hi;
    best.iterations = std::max(best.iterations, b.iterations);
  }
  return best;
}

Enclosure expansion_log(const Scalar& ratio) { return log(ratio.inverse().enclose()); }

Enclosure log_ratio_enclosure(const Enclosure& num, const Scalar& ratio) {
  return log(num) / expansion_log(ratio);
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace

FiniteTypeReport is_finite_type(const LineIFS& ifs) {
  FiniteTypeReport rep;
  Scalar rho = ifs.ratio.inverse();
  if (!is_integer(rho.u()) || !is_integer(rho.v())) {
    rep.reason = "1/ratio " + rho.to_string() + " is not an algebraic integer";
    return rep;
  }
  if (rho.is_rational()) {
    if (rho.abs() <= 1) {
      rep.reason = "1/ratio must exceed 1";
      return rep;
    }
    rep.ring = "Z";
  } else {
    const Field& f = rho.field();
    if (!is_integer(f->a) || !is_integer(f->b)) {
      rep.reason = "field generator is not an algebraic integer";
      return rep;
    }
    if (!(rho.conjugate().abs() < 1)) {
      rep.reason = rho.to_string() + " is not Pisot";
      return rep;
    }
    rep.ring = "Z[g]";
  }
  std::vector<Scalar> all = ifs.offsets;
  all.push_back(ifs.hull.lo);
  all.push_back(ifs.hull.hi);
  rep.denominator = common_denominator(all);
  rep.certified = true;
  rep.reason = "Pisot expansion with offsets in (1/" + rep.denominator.get_str() + ")" + rep.ring;
  return rep;
}

CountMatrix NeighborAutomaton::dense() const {
  CountMatrix m(size(), std::vector<long>(size(), 0));
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    for (const auto& [j, w] : transitions[i]) m[i][j] += w;
  }
  return m;
}

std::vector<Integer> NeighborAutomaton::populations(int n) const {
  if (n < 0) throw PreconditionError("negative depth");
  std::vector<Integer> pop(size(), 0);
  pop.at(start_state) = 1;
  for (int k = 0; k < n; ++k) {
    std::vector<Integer> next(size(), 0);
    for (std::size_t i = 0; i < size(); ++i) {
      if (pop[i] == 0) continue;
      for (const auto& [j, w] : transitions[i]) next[j] += pop[i] * w;
    }
    pop = std::move(next);
  }
  return pop;
}

Integer NeighborAutomaton::class_count(int n) const {
  if (!complete) throw PreconditionError("automaton is incomplete");
  auto pop = populations(n);
  Integer k = 0;
  for (std::size_t i = 0; i < size(); ++i) k += pop[i] * static_cast<unsigned long>(states[i].pieces);
  return k;
}

const char* automaton_kind_name(AutomatonKind k) { return k == AutomatonKind::Island ? "island" : "neighbor"; }

NeighborAutomaton build_automaton(const LineIFS& ifs, AutomatonKind kind, std::size_t state_budget) {
  if (ifs.offsets.empty()) throw PreconditionError("empty system");
  if (state_budget < 1) throw PreconditionError("state budget must be at least 1");
  auto run = [&](const auto& coords) {
    return kind == AutomatonKind::Island ? build_islands(coords, ifs, state_budget)
                                         : build_neighbors(coords, ifs, state_budget);
  };
  if (auto sys = make_lattice(ifs)) {
    try {
      return run(LatticeCoords(*sys));
    } catch (const LatticeOverflow&) {
    }
  }
  return run(ScalarCoords(ifs));
}

NeighborAutomaton build_automaton(const LineIFS& ifs, std::size_t state_budget) {
  NeighborAutomaton a = build_automaton(ifs, AutomatonKind::Island, state_budget);
  if (a.complete) return a;
  NeighborAutomaton b = build_automaton(ifs, AutomatonKind::Neighbor, state_budget);
  return b.complete ? b : a;
}

double SpectralResult::width() const { return round_up(hi - lo); }

SpectralResult spectral_radius(const CountMatrix& a, double tolerance, int max_iterations) {
  std::vector<std::vector<std::pair<std::size_t, long>>> rows(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a.size()) throw PreconditionError("matrix must be square");
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[i][j] < 0) throw PreconditionError("matrix must be nonnegative");
      if (a[i][j] > 0) rows[i].emplace_back(j, a[i][j]);
    }
  }
  return radius_sparse(rows, tolerance, max_iterations);
}

std::vector<Rational> char_poly(const CountMatrix& a) {
  const std::size_t n = a.size();
  using Mat = std::vector<std::vector<Rational>>;
  Mat A(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw PreconditionError("matrix must be square");
    for (std::size_t j = 0; j < n; ++j) A[i][j] = a[i][j];
  }
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
  std::vector<Rational> c(n + 1);
  c[0] = 1;  // coefficient of x^n
  Mat M(n, std::vector<Rational>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    Mat AM(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        if (A[i][l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) AM[i][j] += A[i][l] * M[l][j];
      }
    }
    for (std::size_t i = 0; i < n; ++i) AM[i][i] += c[k - 1];
    M = std::move(AM);
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) tr += A[i][l] * M[l][i];
    }
    c[k] = -tr / Rational(static_cast<long>(k));
    c[k].canonicalize();
  }
  return c;
}

Rational eval_poly(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational r = 0;
  for (const auto& c : coeffs) r = r * x + c;
  return r;
}

Scalar eval_poly(const std::vector<Rational>& coeffs, const Scalar& x) {
  Scalar r(0);
  for (const auto& c : coeffs) r = r * x + Scalar(c);
  return r;
}

DimensionResult hausdorff_dimension(const NeighborAutomaton& automaton, std::size_t map_count) {
  DimensionResult d;
  d.complete = automaton.complete;
  d.kind = automaton.kind;
  d.states = automaton.size();
  d.similarity = log_ratio_enclosure(Enclosure::point(Rational(static_cast<long>(map_count))), automaton.ratio);
  if (!automaton.complete) {
    // Upper bound only: dimension <= min(1, similarity dimension).
    Rational cap = std::min(Rational(1), d.similarity.upper_exact());
    d.hdim = Enclosure::hull(Rational(0), cap);
    return d;
  }
  SpectralResult r = radius_sparse(automaton.transitions, 1e-12, 100000);
  if (r.lo <= 0) throw InvariantViolation("automaton radius must be positive");
  d.radius = r;
  d.hdim = log_ratio_enclosure(r.enclosure(), automaton.ratio);
  if (automaton.size() <= 12) d.char_poly = char_poly(automaton.dense());
  return d;
}

DimensionResult hausdorff_dimension(const LineIFS& ifs, std::size_t state_budget) {
  NeighborAutomaton a = build_automaton(ifs, state_budget);
  DimensionResult d = hausdorff_dimension(a, ifs.size());
  if (!d.complete) {
    // Tighten with the best affordable counting bound.
    for (int n = 1; n <= 12; ++n) {
      try {
        CountingBound b = depth_counting_bound(ifs, n, nullptr, std::size_t{1} << 20);
        Rational hi = b.bound.upper_exact();
        if (hi < d.hdim.upper_exact()) d.hdim = Enclosure::hull(Rational(0), hi);
      } catch (const BudgetExceeded&) {
        break;
      }
    }
  }
  return d;
}

Integer enumerate_class_count(const LineIFS& ifs, int n, std::size_t budget) {
  if (n < 0) throw PreconditionError("negative depth");
  if (auto sys = make_lattice(ifs)) {
    try {
      return Integer(static_cast<unsigned long>(lattice_classes(*sys, n, budget).size()));
    } catch (const LatticeOverflow&) {
    }
  }
  return Integer(static_cast<unsigned long>(class_count(ifs, n, budget)));
}

CountingBound depth_counting_bound(const LineIFS& ifs, int n, const NeighborAutomaton* automaton,
                                   std::size_t budget) {
  if (n < 1) throw PreconditionError("counting bound needs depth >= 1");
  CountingBound b;
  b.depth = n;
  b.k = (automaton && automaton->complete) ? automaton->class_count(n) : enumerate_class_count(ifs, n, budget);
  Enclosure lk = log(Enclosure::point(Rational(b.k)));
  Enclosure nn = Enclosure::point(Rational(n));
  b.root = exp(lk / nn);
  b.bound = lk / (nn * expansion_log(ifs.ratio));
  return b;
}

std::vector<ElementarySegment> elementary_segments(const LineIFS& ifs) {
  std::vector<Interval> images;
  for (std::size_t i = 0; i < ifs.size(); ++i) images.push_back(ifs.map(i).image(ifs.hull));
  std::vector<Scalar> cuts{ifs.hull.lo, ifs.hull.hi};
  for (const auto& im : images) {
    cuts.push_back(im.lo);
    cuts.push_back(im.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<ElementarySegment> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    ElementarySegment seg;
    seg.span = Interval{cuts[i], cuts[i + 1]};
    seg.length = seg.span.length();
    for (const auto& im : images) {
      if (im.lo <= seg.span.lo && seg.span.hi <= im.hi) ++seg.coverage;
    }
    out.push_back(std::move(seg));
  }
  return out;
}

std::size_t region_population(const LineIFS& ifs, const Interval& region, int n, RegionRule rule,
                              std::size_t budget) {
  if (n < 1) throw PreconditionError("population depth must be >= 1");
  if (region.hi < region.lo) throw PreconditionError("empty region");
  Scalar rho = ifs.ratio.inverse();
  if (auto sys = make_lattice(ifs)) {
    try {
      return population_with(LatticeCoords(*sys), rho, region, n, rule, budget);
    } catch (const LatticeOverflow&) {
    }
  }
  return population_with(ScalarCoords(ifs), rho, region, n, rule, budget);
}

const char* pisot_verdict_name(PisotVerdict v) {
  return v == PisotVerdict::ContainsInterval ? "contains-interval" : "measure-zero";
}

PisotReport classify_pisot_pair(const Field& omega, int n, int m, const Scalar& mu, std::size_t state_budget) {
  if (!omega) throw PreconditionError("omega must be a quadratic irrational");
  if (!is_integer(omega->a) || !is_integer(omega->b)) throw PreconditionError("omega must be an algebraic integer");
  Scalar w = Scalar::generator(omega);
  if (!(w.conjugate().abs() < 1)) throw PreconditionError("omega is not Pisot");
  if (n < 1 || m < 1) throw PreconditionError("exponents must be positive");
  Scalar alpha = w.pow(-n);
  Scalar beta = w.pow(-m);
  if (!(alpha < Scalar(Rational(1, 2))) || !(beta < Scalar(Rational(1, 2)))) {
    throw PreconditionError("omega^-n and omega^-m must be below 1/2");
  }
  if (mu.is_zero()) throw PreconditionError("mu must be nonzero");
  CantorPair pair{CantorSet::middle(alpha), CantorSet::middle(beta)};
  PisotReport rep;
  FullCertificate full = is_full(pair, mu);
  if (full.verdict == FullVerdict::Full) {
    rep.verdict = PisotVerdict::ContainsInterval;
    rep.reason = "difference set is the full interval (" + full.route + ")";
    return rep;
  }
  LineIFS ifs = generate_ifs(pair, mu);
  NeighborAutomaton a = build_automaton(ifs, state_budget);
  if (!a.complete) throw BudgetExceeded("neighbor automaton exceeds " + std::to_string(state_budget) + " states");
  DimensionResult d = hausdorff_dimension(a, ifs.size());
  rep.dimension = d;
  Scalar expansion = ifs.ratio.inverse();
  if (Scalar(d.radius->hi) < expansion) {
    rep.verdict = PisotVerdict::MeasureZero;
    rep.reason = "spectral radius below 1/ratio, dimension < 1";
    return rep;
  }
  std::vector<Rational> poly = d.char_poly ? *d.char_poly : char_poly(a.dense());
  if (eval_poly(poly, expansion).is_zero()) {
    rep.verdict = PisotVerdict::ContainsInterval;
    rep.reason = "spectral radius equals 1/ratio, dimension 1 for a finite-type set";
    return rep;
  }
  throw InvariantViolation("radius bounds straddle 1/ratio without an exact root");
}

}  // namespace cantordiff
