#include "kh/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "kh/detail/union_find.hpp"
#include "kh/error.hpp"

namespace kh {

namespace {

// Slot roles. Slot a is always the under-strand's entry, c its exit; b and d
// depend on the sign.
bool slot_is_incoming(int slot, int sign) {
  switch (slot) {
    case 0: return true;
    case 2: return false;
    case 1: return sign < 0;
    default: return sign > 0;
  }
}

void check_edge_degrees(const std::vector<std::array<int, 4>>& tuples) {
  const int edges = 2 * static_cast<int>(tuples.size());
  std::vector<int> seen(static_cast<std::size_t>(edges) + 1, 0);
  for (const auto& t : tuples) {
    for (int label : t) {
      if (label < 1 || label > edges) {
        throw Error(Errc::EdgeDegreeError, "label " + std::to_string(label) + " outside 1.." +
                                               std::to_string(edges));
      }
      ++seen[static_cast<std::size_t>(label)];
    }
  }
  for (int label = 1; label <= edges; ++label) {
    if (seen[static_cast<std::size_t>(label)] != 2) {
      throw Error(Errc::EdgeDegreeError, "label " + std::to_string(label) + " appears " +
                                             std::to_string(seen[static_cast<std::size_t>(label)]) +
                                             " times");
    }
  }
}

std::vector<std::array<Port, 2>> occurrences(const std::vector<std::array<int, 4>>& tuples) {
  std::vector<std::array<Port, 2>> occ(2 * tuples.size());
  std::vector<int> filled(occ.size(), 0);
  for (int x = 0; x < static_cast<int>(tuples.size()); ++x) {
    for (int s = 0; s < 4; ++s) {
      const auto idx = static_cast<std::size_t>(tuples[x][s] - 1);
      occ[idx][filled[idx]++] = Port{x, s};
    }
  }
  return occ;
}

// Union-find over crossing sign variables with parity; node `anchor` has the
// fixed value 0 so relations against it pin a sign.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(int n) : parent_(n), parity_(n, 0) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }

  std::pair<int, int> find(int x) {
    int p = 0;
    int root = x;
    while (parent_[root] != root) {
      p ^= parity_[root];
      root = parent_[root];
    }
    // compress
    int acc = p;
    while (parent_[x] != x) {
      const int next = parent_[x];
      const int next_parity = acc ^ parity_[x];
      parent_[x] = root;
      parity_[x] = acc;
      acc = next_parity;
      x = next;
    }
    return {root, p};
  }

  // Imposes v(a) xor v(b) == rel; false on contradiction.
  bool relate(int a, int b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ rel;
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> parity_;
};

struct Layout {
  std::array<int, 2> labels{};  // left, right
  std::array<bool, 2> up{};
};

std::optional<Layout> layout_for(const LinkDiagram& d, int e1, int e2) {
  const bool loop1 = d.is_loop_label(e1);
  const bool loop2 = d.is_loop_label(e2);
  if (loop1 || loop2) {
    // A free loop can be placed in any face next to the other strand.
    if (loop1 && !loop2) return Layout{{e2, e1}, {true, true}};
    return Layout{{e1, e2}, {true, true}};
  }
  const int r1 = d.face_right_of(e1), l1 = d.face_left_of(e1);
  const int r2 = d.face_right_of(e2), l2 = d.face_left_of(e2);
  if (r1 == l2) return Layout{{e1, e2}, {true, true}};
  if (l1 == r2) return Layout{{e2, e1}, {true, true}};
  if (r1 == r2) return Layout{{e1, e2}, {true, false}};
  if (l1 == l2) return Layout{{e2, e1}, {false, true}};
  return std::nullopt;
}

// Crossing from geometric slot labels. Slots are SW, SE, NE, NW (counter-
// clockwise); one strand runs SW-NE, the other SE-NW; "up" means from the
// southern slot to the northern one. `sw_ne_over` picks the over-strand.
Crossing geometric_crossing(std::array<int, 4> slots, bool sw_ne_over, bool sw_ne_up,
                            bool se_nw_up) {
  enum { SW = 0, SE = 1, NE = 2, NW = 3 };
  int under_in;
  int over_in;
  if (sw_ne_over) {
    under_in = se_nw_up ? SE : NW;
    over_in = sw_ne_up ? SW : NE;
  } else {
    under_in = sw_ne_up ? SW : NE;
    over_in = se_nw_up ? SE : NW;
  }
  Crossing x;
  for (int k = 0; k < 4; ++k) x.edges[k] = slots[(under_in + k) % 4];
  // over-strand entering at tuple slot d means positive
  x.sign = ((over_in - under_in + 4) % 4 == 3) ? +1 : -1;
  return x;
}

std::optional<std::array<int, 2>> mark_labels(const LinkDiagram& d) {
  if (!d.marked_region()) return std::nullopt;
  return d.marked_region()->edges;
}

// Splices a 2-braid word into the two strands of `layout`. Letter +1 puts the
// SW-NE strand over. Returns the new diagram and the labels of the top ports.
std::pair<LinkDiagram, std::array<int, 2>> splice(const LinkDiagram& d, const Layout& layout,
                                                  const std::vector<int>& letters,
                                                  std::optional<std::array<int, 2>> mark) {
  std::vector<Crossing> xs = d.crossings();
  int next = d.edge_count() + 1;
  int loops = d.free_loops();
  std::array<int, 2> bottom{};
  std::array<int, 2> top{};
  std::map<int, int> relabel;  // old mark label -> new label
  for (int p = 0; p < 2; ++p) {
    const int e = layout.labels[p];
    if (d.is_loop_label(e)) {
      bottom[p] = top[p] = next++;
      --loops;
      relabel[e] = top[p];
      continue;
    }
    const int fresh = next++;
    const Port head = d.edge_ends(e).head;
    xs[head.crossing].edges[head.slot] = fresh;
    if (layout.up[p]) {
      bottom[p] = e;
      top[p] = fresh;
    } else {
      bottom[p] = fresh;
      top[p] = e;
    }
  }

  std::array<int, 2> cur = bottom;
  std::array<bool, 2> up = layout.up;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    std::array<int, 2> out{};
    if (k + 1 == letters.size()) {
      out = top;
    } else {
      out = {next, next + 1};
      next += 2;
    }
    xs.push_back(geometric_crossing({cur[0], cur[1], out[1], out[0]}, letters[k] > 0, up[0], up[1]));
    cur = out;
    std::swap(up[0], up[1]);
  }

  if (mark) {
    // Loop labels shift with the edge count; loops consumed by the splice map
    // to the edge that replaced them.
    const int old_edges = d.edge_count();
    const int new_edges = static_cast<int>(xs.size()) * 2;
    std::array<int, 2> m = *mark;
    int removed_before = 0;
    for (int& label : m) {
      if (auto it = relabel.find(label); it != relabel.end()) {
        label = it->second;
      } else if (d.is_loop_label(label)) {
        removed_before = 0;
        for (const auto& [old_label, unused] : relabel) {
          if (old_label < label) ++removed_before;
        }
        label = label - old_edges + new_edges - removed_before;
      }
    }
    mark = m;
  }
  return {LinkDiagram::from_signed(std::move(xs), loops, mark), top};
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int parse_int(std::string_view s, std::string_view context) {
  const std::string t = trim(s);
  int value = 0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (t.empty() || ec != std::errc() || ptr != last) {
    throw Error(Errc::MalformedSyntax, "bad integer '" + t + "' in " + std::string(context));
  }
  return value;
}

}  // namespace

LinkDiagram LinkDiagram::from_pd(const std::vector<std::array<int, 4>>& tuples, int free_loops,
                                 std::optional<std::array<int, 2>> mark) {
  if (free_loops < 0) throw Error(Errc::MalformedSyntax, "negative loop count");
  if (tuples.empty() && free_loops == 0) throw Error(Errc::MalformedSyntax, "diagram has no components");
  check_edge_degrees(tuples);
  const int n = static_cast<int>(tuples.size());
  const int anchor = n;
  ParityUnionFind uf(n + 1);
  const auto occ = occurrences(tuples);
  // role_in(port) = v(node) xor k
  auto node_of = [&](const Port& p) { return (p.slot == 0 || p.slot == 2) ? anchor : p.crossing; };
  auto k_of = [](const Port& p) {
    switch (p.slot) {
      case 0: return 1;
      case 2: return 0;
      case 1: return 1;
      default: return 0;
    }
  };
  for (std::size_t e = 0; e < occ.size(); ++e) {
    const Port& p = occ[e][0];
    const Port& q = occ[e][1];
    if (!uf.relate(node_of(p), node_of(q), 1 ^ k_of(p) ^ k_of(q))) {
      throw Error(Errc::OrientationInconsistent,
                  "edge " + std::to_string(e + 1) + " cannot be oriented consistently");
    }
  }
  LinkDiagram d;
  d.crossings_.reserve(tuples.size());
  const int anchor_root = uf.find(anchor).first;
  const int anchor_parity = uf.find(anchor).second;
  for (int x = 0; x < n; ++x) {
    auto [root, parity] = uf.find(x);
    if (root != anchor_root) {
      throw Error(Errc::AmbiguousOrientation,
                  "crossing " + std::to_string(x + 1) + " lies on a component that is never an under-strand");
    }
    const int value = parity ^ anchor_parity;
    d.crossings_.push_back(Crossing{tuples[x], value ? +1 : -1});
  }
  d.free_loops_ = free_loops;
  d.index_edges();
  d.compute_faces();
  d.attach_mark(mark);
  return d;
}

LinkDiagram LinkDiagram::from_signed(std::vector<Crossing> crossings, int free_loops,
                                     std::optional<std::array<int, 2>> mark) {
  if (free_loops < 0) throw Error(Errc::MalformedSyntax, "negative loop count");
  if (crossings.empty() && free_loops == 0) throw Error(Errc::MalformedSyntax, "diagram has no components");
  std::vector<std::array<int, 4>> tuples;
  tuples.reserve(crossings.size());
  for (const auto& x : crossings) {
    if (x.sign != 1 && x.sign != -1) throw Error(Errc::MalformedSyntax, "crossing sign must be +1 or -1");
    tuples.push_back(x.edges);
  }
  check_edge_degrees(tuples);
  const auto occ = occurrences(tuples);
  for (std::size_t e = 0; e < occ.size(); ++e) {
    const Port& p = occ[e][0];
    const Port& q = occ[e][1];
    if (slot_is_incoming(p.slot, crossings[p.crossing].sign) ==
        slot_is_incoming(q.slot, crossings[q.crossing].sign)) {
      throw Error(Errc::OrientationInconsistent,
                  "edge " + std::to_string(e + 1) + " has two heads or two tails");
    }
  }
  LinkDiagram d;
  d.crossings_ = std::move(crossings);
  d.free_loops_ = free_loops;
  d.index_edges();
  d.compute_faces();
  d.attach_mark(mark);
  return d;
}

void LinkDiagram::index_edges() {
  ends_.assign(static_cast<std::size_t>(edge_count()), EdgeEnds{});
  for (int x = 0; x < crossing_count(); ++x) {
    const auto& c = crossings_[x];
    for (int s = 0; s < 4; ++s) {
      auto& ends = ends_[static_cast<std::size_t>(c.edges[s] - 1)];
      if (slot_is_incoming(s, c.sign)) {
        ends.head = Port{x, s};
      } else {
        ends.tail = Port{x, s};
      }
    }
  }
}

void LinkDiagram::compute_faces() {
  const int corners = 4 * crossing_count();
  // partner[4x+s] = the other end of the edge at slot s of crossing x
  std::vector<int> partner(static_cast<std::size_t>(corners), -1);
  for (const auto& ends : ends_) {
    const int a = 4 * ends.tail.crossing + ends.tail.slot;
    const int b = 4 * ends.head.crossing + ends.head.slot;
    partner[a] = b;
    partner[b] = a;
  }
  corner_face_.assign(static_cast<std::size_t>(corners), -1);
  face_count_ = 0;
  for (int start = 0; start < corners; ++start) {
    if (corner_face_[start] >= 0) continue;
    int corner = start;
    while (corner_face_[corner] < 0) {
      corner_face_[corner] = face_count_;
      const int x = corner / 4;
      const int s = corner % 4;
      corner = partner[4 * x + (s + 1) % 4];
    }
    ++face_count_;
  }
}

int LinkDiagram::face_right_of(int label) const {
  const Port h = edge_ends(label).head;
  return corner_face_[static_cast<std::size_t>(4 * h.crossing + h.slot)];
}

int LinkDiagram::face_left_of(int label) const {
  const Port h = edge_ends(label).head;
  return corner_face_[static_cast<std::size_t>(4 * h.crossing + (h.slot + 3) % 4)];
}

void LinkDiagram::attach_mark(std::optional<std::array<int, 2>> mark) {
  mark_.reset();
  if (!mark) return;
  const int limit = edge_count() + free_loops_;
  for (int label : *mark) {
    if (label < 1 || label > limit) {
      throw Error(Errc::MalformedSyntax, "mark label " + std::to_string(label) + " outside 1.." +
                                             std::to_string(limit));
    }
  }
  if ((*mark)[0] == (*mark)[1]) throw Error(Errc::MalformedSyntax, "mark labels must differ");
  TwistRegion region{*mark, false};
  const auto layout = layout_for(*this, (*mark)[0], (*mark)[1]);
  region.coherent = layout && layout->up[0] && layout->up[1];
  mark_ = region;
}

LinkDiagram parse_pd(std::string_view text) {
  std::vector<std::array<int, 4>> tuples;
  int loops = 0;
  bool have_loops = false;
  std::optional<std::array<int, 2>> mark;

  std::string cleaned;
  cleaned.reserve(text.size());
  bool in_comment = false;
  for (char ch : text) {
    if (ch == '#') in_comment = true;
    if (ch == '\n') in_comment = false;
    cleaned.push_back(in_comment ? ' ' : ch);
  }

  std::size_t i = 0;
  const std::size_t n = cleaned.size();
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(cleaned[i]))) ++i;
  };
  auto read_token = [&] {
    const std::size_t b = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(cleaned[i]))) ++i;
    return cleaned.substr(b, i - b);
  };

  for (skip_ws(); i < n; skip_ws()) {
    if (cleaned.compare(i, 6, "loops=") == 0) {
      if (have_loops) throw Error(Errc::MalformedSyntax, "duplicate loops= header");
      i += 6;
      loops = parse_int(read_token(), "loops=");
      if (loops < 0) throw Error(Errc::MalformedSyntax, "negative loops=");
      have_loops = true;
    } else if (cleaned.compare(i, 5, "mark=") == 0) {
      if (mark) throw Error(Errc::MalformedSyntax, "duplicate mark= header");
      i += 5;
      const std::string tok = read_token();
      const auto comma = tok.find(',');
      if (comma == std::string::npos) throw Error(Errc::MalformedSyntax, "mark= needs two labels");
      mark = std::array<int, 2>{parse_int(std::string_view(tok).substr(0, comma), "mark="),
                                parse_int(std::string_view(tok).substr(comma + 1), "mark=")};
    } else if (cleaned[i] == 'X') {
      ++i;
      skip_ws();
      if (i >= n || cleaned[i] != '(') throw Error(Errc::MalformedSyntax, "expected '(' after X");
      const std::size_t close = cleaned.find(')', i);
      if (close == std::string::npos) throw Error(Errc::MalformedSyntax, "unterminated X(");
      const std::string_view body = std::string_view(cleaned).substr(i + 1, close - i - 1);
      std::array<int, 4> t{};
      std::size_t pos = 0;
      for (int k = 0; k < 4; ++k) {
        const std::size_t comma = body.find(',', pos);
        if ((k < 3) != (comma != std::string_view::npos)) {
          throw Error(Errc::MalformedSyntax, "X(...) needs exactly four labels");
        }
        const std::size_t end = k < 3 ? comma : body.size();
        t[k] = parse_int(body.substr(pos, end - pos), "X(...)");
        pos = end + 1;
      }
      tuples.push_back(t);
      i = close + 1;
    } else {
      throw Error(Errc::MalformedSyntax, "unexpected token '" + read_token() + "'");
    }
  }
  return LinkDiagram::from_pd(tuples, loops, mark);
}

std::string to_pd_text(const LinkDiagram& d) {
  std::string out;
  if (d.free_loops() > 0) out += "loops=" + std::to_string(d.free_loops()) + "\n";
  if (d.marked_region()) {
    const auto& m = d.marked_region()->edges;
    out += "mark=" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "\n";
  }
  for (std::size_t x = 0; x < d.crossings().size(); ++x) {
    const auto& e = d.crossings()[x].edges;
    if (x > 0) out += ' ';
    out += "X(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + std::to_string(e[2]) + "," +
           std::to_string(e[3]) + ")";
  }
  if (!d.crossings().empty()) out += '\n';
  return out;
}

CrossingCounts crossing_counts(const LinkDiagram& d) {
  CrossingCounts c;
  for (const auto& x : d.crossings()) (x.sign > 0 ? c.n_plus : c.n_minus) += 1;
  c.writhe = c.n_plus - c.n_minus;
  return c;
}

int global_smoothing_circles(const LinkDiagram& d, int which) {
  detail::UnionFind uf(d.edge_count() + 1);
  int classes = d.edge_count();
  for (const auto& x : d.crossings()) {
    for (const auto& pr : smoothing_pairs(x, which)) {
      if (uf.unite(pr[0], pr[1])) --classes;
    }
  }
  return classes + d.free_loops();
}

int diagram_pieces(const LinkDiagram& d) {
  const int n = d.crossing_count();
  detail::UnionFind uf(std::max(n, 1));
  int pieces = n;
  for (int label = 1; label <= d.edge_count(); ++label) {
    const auto& e = d.edge_ends(label);
    if (uf.unite(e.tail.crossing, e.head.crossing)) --pieces;
  }
  return pieces + d.free_loops();
}

LinkDiagram with_mark(const LinkDiagram& d, int e1, int e2) {
  return LinkDiagram::from_signed(d.crossings(), d.free_loops(), std::array<int, 2>{e1, e2});
}

LinkDiagram insert_half_twists(const LinkDiagram& d, int n) {
  if (n < 0) throw Error(Errc::NegativeTwistCount, "half-twist count must be nonnegative");
  if (!d.marked_region()) throw Error(Errc::NoMarkedRegion, "diagram has no marked twist region");
  const auto& m = d.marked_region()->edges;
  const auto layout = layout_for(d, m[0], m[1]);
  if (!layout) throw Error(Errc::RegionNotAdjacent, "marked edges do not bound a common face");
  if (!d.marked_region()->coherent) {
    throw Error(Errc::IncoherentRegion, "marked strands cross the disk in opposite directions");
  }
  if (n == 0) return d;
  auto [result, top] = splice(d, *layout, std::vector<int>(static_cast<std::size_t>(n), +1), std::nullopt);
  // keep the caller's mark order: top of the strand that carried m[0] first
  const std::array<int, 2> new_mark = layout->labels[0] == m[0] ? top : std::array<int, 2>{top[1], top[0]};
  return with_mark(result, new_mark[0], new_mark[1]);
}

LinkDiagram braid_closure(const std::vector<int>& word, int strands) {
  if (strands < 1) throw Error(Errc::IndexOutOfRange, "a braid needs at least one strand");
  std::vector<int> pos(static_cast<std::size_t>(strands));
  for (int p = 0; p < strands; ++p) pos[p] = p + 1;
  int next = strands + 1;
  std::vector<Crossing> xs;
  xs.reserve(word.size());
  for (int g : word) {
    const int idx = std::abs(g);
    if (g == 0 || idx > strands - 1) {
      throw Error(Errc::IndexOutOfRange, "generator " + std::to_string(g) + " out of range for " +
                                             std::to_string(strands) + " strands");
    }
    const int p = idx - 1;
    const std::array<int, 2> out{next, next + 1};
    next += 2;
    xs.push_back(geometric_crossing({pos[p], pos[p + 1], out[1], out[0]}, g > 0, true, true));
    pos[p] = out[0];
    pos[p + 1] = out[1];
  }
  // close up: the top label at each position is the bottom label there
  std::map<int, int> close;
  int loops = 0;
  for (int p = 0; p < strands; ++p) {
    if (pos[p] == p + 1) {
      ++loops;
    } else {
      close[pos[p]] = p + 1;
    }
  }
  std::vector<int> used;
  for (auto& x : xs) {
    for (int& e : x.edges) {
      if (auto it = close.find(e); it != close.end()) e = it->second;
      used.push_back(e);
    }
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (auto& x : xs) {
    for (int& e : x.edges) e = static_cast<int>(std::lower_bound(used.begin(), used.end(), e) - used.begin()) + 1;
  }
  return LinkDiagram::from_signed(std::move(xs), loops);
}

std::vector<int> parse_braid_word(std::string_view text) {
  std::vector<int> word;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    word.push_back(parse_int(token, "braid word"));
    token.clear();
  };
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  return word;
}

LinkDiagram mirror(const LinkDiagram& d) {
  std::vector<Crossing> xs;
  xs.reserve(d.crossings().size());
  for (const auto& x : d.crossings()) {
    const auto& e = x.edges;
    // the old over-strand becomes the under-strand; start at its entry
    if (x.sign > 0) {
      xs.push_back(Crossing{{e[3], e[0], e[1], e[2]}, -1});
    } else {
      xs.push_back(Crossing{{e[1], e[2], e[3], e[0]}, +1});
    }
  }
  return LinkDiagram::from_signed(std::move(xs), d.free_loops(), mark_labels(d));
}

LinkDiagram add_kink(const LinkDiagram& d, int label, int sign) {
  if (label < 1 || label > d.edge_count() + d.free_loops()) {
    throw Error(Errc::IndexOutOfRange, "kink edge " + std::to_string(label) + " does not exist");
  }
  std::vector<Crossing> xs = d.crossings();
  if (d.is_loop_label(label)) {
    // the free loop becomes a one-crossing curl
    const int through = d.edge_count() + 1;
    const int curl = d.edge_count() + 2;
    const int consumed = label - d.edge_count() - 1;
    if (sign > 0) {
      xs.push_back(Crossing{{through, through, curl, curl}, +1});
    } else {
      xs.push_back(Crossing{{through, curl, curl, through}, -1});
    }
    auto mark = mark_labels(d);
    if (mark) {
      for (int& m : *mark) {
        if (!d.is_loop_label(m)) continue;
        const int k = m - d.edge_count() - 1;
        m = k == consumed ? through : curl + (k < consumed ? k : k - 1) + 1;
      }
    }
    return LinkDiagram::from_signed(std::move(xs), d.free_loops() - 1, mark);
  }
  const int loop = d.edge_count() + 1;
  const int out = d.edge_count() + 2;
  const Port head = d.edge_ends(label).head;
  xs[head.crossing].edges[head.slot] = out;
  if (sign > 0) {
    xs.push_back(Crossing{{label, out, loop, loop}, +1});
  } else {
    xs.push_back(Crossing{{label, loop, loop, out}, -1});
  }
  auto mark = mark_labels(d);
  if (mark) {
    for (int& m : *mark) {
      if (d.is_loop_label(m)) m += 2;
    }
  }
  return LinkDiagram::from_signed(std::move(xs), d.free_loops(), mark);
}

LinkDiagram add_clasp(const LinkDiagram& d, int over_label, int under_label) {
  if (over_label == under_label) throw Error(Errc::RegionNotAdjacent, "a clasp needs two distinct edges");
  const auto layout = layout_for(d, over_label, under_label);
  if (!layout) throw Error(Errc::RegionNotAdjacent, "edges do not bound a common face");
  const bool over_is_left = layout->labels[0] == over_label;
  const std::vector<int> letters = over_is_left ? std::vector<int>{+1, -1} : std::vector<int>{-1, +1};
  return splice(d, *layout, letters, mark_labels(d)).first;
}

LinkDiagram add_free_loop(const LinkDiagram& d) {
  return LinkDiagram::from_signed(d.crossings(), d.free_loops() + 1, mark_labels(d));
}

std::string fingerprint(const LinkDiagram& d) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : to_pd_text(d)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace kh
