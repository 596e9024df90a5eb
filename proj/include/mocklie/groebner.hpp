#pragma once

// Two-sided Gröbner bases in the free associative algebra, by resolution of
// overlap ambiguities (the diamond lemma).  Drives the enveloping-algebra
// pipeline: dimension via normal-word enumeration, speciality, the kernel of
// the canonical map from the algebra into its envelope, and checkpointed
// long runs with a degree budget.
//
// Completion processes ambiguities in ascending ambient-word order, one
// degree batch at a time; with jobs > 1 a batch's S-polynomials are
// pre-reduced in parallel against a frozen snapshot and then merged
// sequentially in queue order, so the outcome stays deterministic.  When a
// new generator's leading word divides an older leading word, the older
// generator is retired and its reduction re-enters the worklist; active
// leading words therefore never divide one another, and on completion a
// single tail-reduction pass yields the unique reduced basis.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mocklie/matrix.hpp"
#include "mocklie/ncalg.hpp"
#include "mocklie/parallel.hpp"

namespace mocklie {

template <class F>
struct GroebnerBasis {
  std::vector<NCPoly<F>> gens;  // the reduced basis when complete
  int letters = 0;
  bool complete = false;
  int processed_degree = 0;  // ambiguities resolved through this ambient degree
  int pending_degree = 0;    // smallest unresolved ambient degree when incomplete
};

namespace detail_gb {

struct SvHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
};
using LeadMap = std::unordered_map<std::string, int, SvHash, std::equal_to<>>;

struct Obstruction {
  NCWord ambient;
  int i = 0, j = 0;  // lead(i) is a prefix of ambient, lead(j) sits at pos
  int pos = 0;

  friend bool operator<(const Obstruction& a, const Obstruction& b) {
    if (int c = nc_compare(a.ambient, b.ambient)) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.pos < b.pos;
  }
};

template <class F>
class Engine {
 public:
  Engine(int letters, int jobs) : letters_(letters), jobs_(std::max(jobs, 1)) {}

  // Seed with a polynomial (canonical form); zero polys are ignored.
  void seed(const NCPoly<F>& p) {
    if (!p.zero()) insert(p);
  }

  // Seed an already-interreduced generator set together with a watermark of
  // resolved degrees (checkpoint resume): enqueued ambiguities at or below
  // the watermark are dropped.
  void seed_resumed(std::vector<NCPoly<F>> gens, int watermark) {
    for (auto& g : gens) insert(g);
    if (watermark <= 0) return;
    for (auto it = queue_.begin(); it != queue_.end();)
      it = static_cast<int>(it->ambient.size()) <= watermark ? queue_.erase(it) : std::next(it);
    processed_ = watermark;
  }

  // Resolve ambiguities of ambient degree <= maxdeg.  Returns true when the
  // queue drained (the active set is a Gröbner basis).  `on_batch`, when
  // set, runs after each degree batch (checkpoint hook).
  template <class Hook>
  bool run(int maxdeg, Hook&& on_batch) {
    while (!queue_.empty()) {
      int d = static_cast<int>(queue_.begin()->ambient.size());
      if (d > maxdeg) {
        pending_ = d;
        processed_ = maxdeg;
        return false;
      }
      std::vector<Obstruction> batch;
      while (!queue_.empty() && static_cast<int>(queue_.begin()->ambient.size()) == d) {
        batch.push_back(*queue_.begin());
        queue_.erase(queue_.begin());
      }

      std::vector<NCPoly<F>> pre(batch.size());
      std::vector<char> have(batch.size(), 0);
      if (jobs_ > 1) {
        // parallel prepass against the frozen current set
        par::for_each(static_cast<std::int64_t>(batch.size()), jobs_, [&](std::int64_t k, int) {
          const Obstruction& o = batch[k];
          if (!active_[o.i] || !active_[o.j]) return;
          pre[k] = reduce(s_poly(o));
          have[k] = 1;
        });
      }
      for (std::size_t k = 0; k < batch.size(); ++k) {
        const Obstruction& o = batch[k];
        if (!active_[o.i] || !active_[o.j]) continue;
        insert(have[k] ? pre[k] : s_poly(o));
      }
      processed_ = std::max(processed_, d);
      pending_ = queue_.empty() ? 0 : static_cast<int>(queue_.begin()->ambient.size());
      on_batch(*this);
    }
    pending_ = 0;
    return true;
  }

  // Unique reduced basis: active leads never divide one another, so one
  // tail-reduction pass suffices.
  std::vector<NCPoly<F>> reduced_basis() const {
    std::vector<NCPoly<F>> out;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      if (!active_[g]) continue;
      NCPoly<F> tail;
      tail.terms.assign(gens_[g].terms.begin() + 1, gens_[g].terms.end());
      NCPoly<F> r = reduce(tail);
      r.terms.insert(r.terms.begin(), gens_[g].terms.front());
      out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(),
              [](const NCPoly<F>& a, const NCPoly<F>& b) { return nc_less(a.lead(), b.lead()); });
    return out;
  }

  std::vector<NCPoly<F>> active_gens() const {
    std::vector<NCPoly<F>> out;
    for (std::size_t g = 0; g < gens_.size(); ++g)
      if (active_[g]) out.push_back(gens_[g]);
    return out;
  }

  int processed_degree() const { return processed_; }
  int pending_degree() const { return pending_; }
  int letters() const { return letters_; }

  // Full normal form against the active set (deterministic reduction order:
  // largest term first; leftmost, then shortest, matching leading word).
  NCPoly<F> reduce(const NCPoly<F>& p) const {
    std::map<NCWord, F, Greater> work;
    for (const auto& [w, c] : p.terms) work.emplace(w, c);
    NCPoly<F> out;
    while (!work.empty()) {
      auto node = work.extract(work.begin());
      const NCWord& w = node.key();
      const F& c = node.mapped();
      if (c.is_zero()) continue;
      Division div = find_divisor(w);
      if (div.gen < 0) {
        out.terms.emplace_back(w, c);
        continue;
      }
      const NCPoly<F>& red = gens_[div.gen];
      for (std::size_t t = 1; t < red.terms.size(); ++t) {
        NCWord nw = w.substr(0, div.pos) + red.terms[t].first + w.substr(div.pos + div.len);
        F nc = -(c * red.terms[t].second);
        auto [it, fresh] = work.emplace(std::move(nw), nc);
        if (!fresh) {
          it->second = it->second + nc;
          if (it->second.is_zero()) work.erase(it);
        }
      }
    }
    return out;
  }

 private:
  struct Greater {
    bool operator()(const NCWord& a, const NCWord& b) const { return nc_less(b, a); }
  };

  NCPoly<F> s_poly(const Obstruction& o) const {
    const NCPoly<F>& gi = gens_[o.i];
    const NCPoly<F>& gj = gens_[o.j];
    NCWord right = o.ambient.substr(gi.lead().size());
    NCWord left = o.ambient.substr(0, o.pos);
    NCPoly<F> a = nc_mul_word(NCWord(), gi, right);
    NCPoly<F> b = nc_mul_word(left, gj, NCWord());
    std::vector<std::pair<NCWord, F>> raw = a.terms;
    for (const auto& [w, c] : b.terms) raw.emplace_back(w, -c);
    return nc_canonical(std::move(raw));
  }

  struct Division {
    int gen = -1;
    std::size_t pos = 0, len = 0;
  };

  // leftmost, then shortest active leading word inside w
  Division find_divisor(const NCWord& w) const {
    std::string_view sv(w);
    for (std::size_t s = 0; s < w.size(); ++s)
      for (std::size_t l = min_lead_; l <= max_lead_ && s + l <= w.size(); ++l) {
        auto it = lead_of_.find(sv.substr(s, l));
        if (it != lead_of_.end()) return {it->second, s, l};
      }
    return {};
  }

  void insert(const NCPoly<F>& p) {
    std::vector<NCPoly<F>> work{p};
    while (!work.empty()) {
      NCPoly<F> q = std::move(work.front());
      work.erase(work.begin());
      NCPoly<F> r = reduce(q);
      if (r.zero()) continue;
      r.make_monic();
      int id = static_cast<int>(gens_.size());
      gens_.push_back(std::move(r));
      active_.push_back(1);
      const NCWord& lead = gens_[id].lead();
      lead_of_.emplace(lead, id);
      min_lead_ = std::min(min_lead_, lead.size());
      max_lead_ = std::max(max_lead_, lead.size());
      for (int g = 0; g <= id; ++g) {
        if (!active_[g]) continue;
        enqueue_overlaps(g, id);
        if (g != id) enqueue_overlaps(id, g);
      }
      // retire older generators whose leading word contains the new one
      for (int g = 0; g < id; ++g) {
        if (!active_[g] || gens_[g].lead().size() <= lead.size()) continue;
        if (gens_[g].lead().find(lead) == NCWord::npos) continue;
        active_[g] = 0;
        lead_of_.erase(gens_[g].lead());
        work.push_back(gens_[g]);
      }
    }
  }

  void enqueue_overlaps(int li, int ri) {
    const NCWord& u = gens_[li].lead();
    const NCWord& v = gens_[ri].lead();
    if (u.empty() || v.empty()) return;
    std::size_t maxo = std::min(u.size(), v.size()) - 1;
    for (std::size_t o = 1; o <= maxo; ++o) {
      if (NCWord::traits_type::compare(u.data() + u.size() - o, v.data(), o) != 0) continue;
      Obstruction ob;
      ob.ambient = u + v.substr(o);
      ob.i = li;
      ob.j = ri;
      ob.pos = static_cast<int>(u.size() - o);
      queue_.insert(std::move(ob));
    }
  }

  int letters_;
  int jobs_;
  std::vector<NCPoly<F>> gens_;
  std::vector<char> active_;
  LeadMap lead_of_;
  std::size_t min_lead_ = std::numeric_limits<std::size_t>::max();
  std::size_t max_lead_ = 0;
  std::set<Obstruction> queue_;
  int processed_ = 0;
  int pending_ = 0;
};

}  // namespace detail_gb

// Run completion on a relation list with a degree budget.
template <class F, class Hook>
GroebnerBasis<F> complete_basis(const std::vector<NCPoly<F>>& relations, int letters, int maxdeg,
                                int jobs, Hook&& on_batch) {
  detail_gb::Engine<F> eng(letters, jobs);
  for (const auto& r : relations) eng.seed(r);
  GroebnerBasis<F> gb;
  gb.letters = letters;
  gb.complete = eng.run(maxdeg, [&](const detail_gb::Engine<F>& e) { on_batch(e); });
  gb.processed_degree = eng.processed_degree();
  gb.pending_degree = eng.pending_degree();
  gb.gens = gb.complete ? eng.reduced_basis() : eng.active_gens();
  return gb;
}

template <class F>
GroebnerBasis<F> complete_basis(const std::vector<NCPoly<F>>& relations, int letters, int maxdeg,
                                int jobs = 1) {
  return complete_basis(relations, letters, maxdeg, jobs, [](const detail_gb::Engine<F>&) {});
}

// Normal form against a basis (conclusive when the basis is complete), with
// the same deterministic reduction order as completion: largest term first,
// leftmost then shortest matching leading word.
template <class F>
NCPoly<F> normal_form(const NCPoly<F>& p, const std::vector<NCPoly<F>>& basis) {
  detail_gb::LeadMap leads;
  std::size_t min_lead = std::numeric_limits<std::size_t>::max(), max_lead = 0;
  for (std::size_t g = 0; g < basis.size(); ++g) {
    const NCWord& l = basis[g].lead();
    if (leads.emplace(l, static_cast<int>(g)).second) {
      min_lead = std::min(min_lead, l.size());
      max_lead = std::max(max_lead, l.size());
    }
  }
  struct Greater {
    bool operator()(const NCWord& a, const NCWord& b) const { return nc_less(b, a); }
  };
  std::map<NCWord, F, Greater> work;
  for (const auto& [w, c] : p.terms) work.emplace(w, c);
  NCPoly<F> out;
  while (!work.empty()) {
    auto node = work.extract(work.begin());
    const NCWord& w = node.key();
    const F& c = node.mapped();
    if (c.is_zero()) continue;
    int gen = -1;
    std::size_t pos = 0, len = 0;
    std::string_view sv(w);
    for (std::size_t s = 0; s < w.size() && gen < 0; ++s)
      for (std::size_t l = min_lead; l <= max_lead && s + l <= w.size(); ++l) {
        auto it = leads.find(sv.substr(s, l));
        if (it != leads.end()) {
          gen = it->second;
          pos = s;
          len = l;
          break;
        }
      }
    if (gen < 0) {
      out.terms.emplace_back(w, c);
      continue;
    }
    const NCPoly<F>& red = basis[gen];
    for (std::size_t t = 1; t < red.terms.size(); ++t) {
      NCWord nw = w.substr(0, pos) + red.terms[t].first + w.substr(pos + len);
      F nc = -((c * red.terms[t].second) / red.lead_coeff());
      auto [it, fresh] = work.emplace(std::move(nw), nc);
      if (!fresh) {
        it->second = it->second + nc;
        if (it->second.is_zero()) work.erase(it);
      }
    }
  }
  return out;
}

template <class F>
NCPoly<F> normal_form(const NCPoly<F>& p, const GroebnerBasis<F>& gb) {
  return normal_form(p, gb.gens);
}

// All words with no leading word of the (complete) basis as a subword,
// grouped by degree; finite exactly when the quotient is finite-dimensional.
template <class F>
std::vector<std::vector<NCWord>> normal_words_by_degree(const GroebnerBasis<F>& gb) {
  if (!gb.complete)
    throw std::runtime_error("normal_words: basis incomplete (budget exhausted at degree " +
                             std::to_string(gb.pending_degree) + "); raise the degree budget");
  std::size_t min_lead = std::numeric_limits<std::size_t>::max(), max_lead = 0, total_len = 0;
  detail_gb::LeadMap leads;
  for (std::size_t g = 0; g < gb.gens.size(); ++g) {
    const NCWord& l = gb.gens[g].lead();
    leads.emplace(l, static_cast<int>(g));
    min_lead = std::min(min_lead, l.size());
    max_lead = std::max(max_lead, l.size());
    total_len += l.size();
  }
  std::vector<std::vector<NCWord>> levels{{NCWord()}};
  // a nonempty level beyond every distinct suffix state implies a pumpable
  // (infinite) set of normal words
  std::size_t cap = total_len + 2;
  while (!levels.back().empty()) {
    if (levels.size() > cap)
      throw std::runtime_error("normal_words: the enveloping quotient is not finite-dimensional");
    std::vector<NCWord> next;
    for (const NCWord& w : levels.back())
      for (int x = 0; x < gb.letters; ++x) {
        NCWord u = w + nc_letter(x);
        bool normal = true;
        if (!gb.gens.empty()) {
          std::string_view sv(u);
          for (std::size_t l = min_lead; l <= max_lead && l <= u.size() && normal; ++l)
            if (leads.find(sv.substr(u.size() - l, l)) != leads.end()) normal = false;
        }
        if (normal) next.push_back(std::move(u));
      }
    levels.push_back(std::move(next));
  }
  levels.pop_back();
  return levels;
}

template <class F>
std::int64_t dim_envelope(const GroebnerBasis<F>& gb) {
  std::int64_t n = 0;
  for (const auto& level : normal_words_by_degree(gb)) n += static_cast<std::int64_t>(level.size());
  return n;
}

// Degree-1 elements of the reduced basis, as element vectors of the
// underlying algebra; they span the kernel of the canonical map into the
// envelope.  The algebra embeds exactly when this list is empty.
template <class F>
std::vector<Vec<F>> envelope_kernel_basis(const GroebnerBasis<F>& gb) {
  if (!gb.complete)
    throw std::runtime_error("envelope_kernel_basis: basis incomplete; raise the degree budget");
  std::vector<Vec<F>> out;
  for (const auto& g : gb.gens) {
    if (g.lead().size() != 1) continue;
    Vec<F> v(gb.letters);
    for (const auto& [w, c] : g.terms) v[static_cast<unsigned char>(w[0])] = c;
    out.push_back(std::move(v));
  }
  return out;
}

template <class F>
bool is_special(const GroebnerBasis<F>& gb) {
  return envelope_kernel_basis(gb).empty();
}

// ----------------------------------------------------------------- envelope

struct EnvelopeOptions {
  int maxdeg = 0;  // 0 = automatic: 2*dim+4, doubled while the budget runs out
  int jobs = 1;
  std::string checkpoint;  // path for save/resume; empty disables
};

template <class F>
struct EnvelopeResult {
  GroebnerBasis<F> gb;
  std::int64_t dim_u = 0;
  std::vector<std::vector<NCWord>> normal_by_degree;
  bool special = true;
  std::vector<Vec<F>> kernel_basis;
  bool budget_exhausted = false;
};

// Stable fingerprint of a table (FNV-1a over the formatted products), used to
// match checkpoints to their input.
template <class F>
std::string algebra_fingerprint(const AlgebraTable<F>& A) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  mix(std::to_string(A.dim()));
  for (int i = 0; i < A.dim(); ++i)
    for (int j = i; j < A.dim(); ++j)
      for (const auto& [k, c] : A.product(i, j))
        mix(std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ":" + c.to_string());
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

namespace detail_gb {

template <class F>
void write_checkpoint(std::ostream& out, const std::string& fingerprint, int letters,
                      int processed, bool complete, const std::vector<NCPoly<F>>& gens) {
  out << "# groebner checkpoint\n";
  out << "field " << F::name() << "\n";
  out << "letters " << letters << "\n";
  out << "fingerprint " << fingerprint << "\n";
  out << "processed " << processed << "\n";
  out << "complete " << (complete ? 1 : 0) << "\n";
  out << "gens " << gens.size() << "\n";
  for (const auto& g : gens) {
    out << g.terms.size();
    for (const auto& [w, c] : g.terms) {
      out << " " << c.to_string() << " ";
      if (w.empty()) out << "-";
      for (std::size_t i = 0; i < w.size(); ++i)
        out << (i ? "." : "") << static_cast<int>(static_cast<unsigned char>(w[i]));
    }
    out << "\n";
  }
}

struct CheckpointData {
  int letters = 0;
  int processed = 0;
  bool complete = false;
};

template <class F>
CheckpointData read_checkpoint(std::istream& in, const std::string& fingerprint,
                               std::vector<NCPoly<F>>& gens) {
  CheckpointData data;
  std::string line;
  auto need = [&](const std::string& key) {
    if (!std::getline(in, line)) throw std::runtime_error("checkpoint: truncated file");
    if (line.rfind(key + " ", 0) != 0) throw std::runtime_error("checkpoint: expected '" + key + "'");
    return line.substr(key.size() + 1);
  };
  if (!std::getline(in, line) || line.rfind("# groebner checkpoint", 0) != 0)
    throw std::runtime_error("checkpoint: bad header");
  if (need("field") != F::name()) throw std::runtime_error("checkpoint: field mode mismatch");
  data.letters = std::stoi(need("letters"));
  if (need("fingerprint") != fingerprint)
    throw std::runtime_error("checkpoint: fingerprint mismatch (different input algebra)");
  data.processed = std::stoi(need("processed"));
  data.complete = std::stoi(need("complete")) != 0;
  int ngens = std::stoi(need("gens"));
  gens.clear();
  for (int g = 0; g < ngens; ++g) {
    if (!std::getline(in, line)) throw std::runtime_error("checkpoint: truncated generator list");
    std::istringstream ls(line);
    int nterms;
    ls >> nterms;
    NCPoly<F> p;
    for (int t = 0; t < nterms; ++t) {
      std::string cs, ws;
      if (!(ls >> cs >> ws)) throw std::runtime_error("checkpoint: truncated polynomial");
      NCWord w;
      if (ws != "-") {
        std::istringstream wsin(ws);
        std::string part;
        while (std::getline(wsin, part, '.')) w += nc_letter(std::stoi(part));
      }
      p.terms.emplace_back(std::move(w), F::from_mpq(parse_rational(cs)));
    }
    gens.push_back(std::move(p));
  }
  return data;
}

}  // namespace detail_gb

// Gröbner pipeline for the enveloping algebra of a commutative table.  With
// an explicit maxdeg the run makes one attempt and reports exhaustion;
// automatic mode doubles the budget until completion (the quotient is
// finite-dimensional, so completion is reached).  A checkpoint file, when
// given, is written after every degree batch and picked up on restart.
template <class F>
EnvelopeResult<F> envelope(const AlgebraTable<F>& A, const EnvelopeOptions& opts = {}) {
  if (A.dim() > 255) throw std::invalid_argument("envelope: more than 255 basis elements");
  const std::string fingerprint = algebra_fingerprint(A);
  EnvelopeResult<F> res;
  res.gb.letters = A.dim();

  auto save = [&](const detail_gb::Engine<F>& eng, bool complete, const std::vector<NCPoly<F>>& gens) {
    if (opts.checkpoint.empty()) return;
    std::string tmp = opts.checkpoint + ".tmp";
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error(tmp + ": cannot write checkpoint");
    detail_gb::write_checkpoint<F>(out, fingerprint, eng.letters(), eng.processed_degree(), complete, gens);
    out.close();
    std::rename(tmp.c_str(), opts.checkpoint.c_str());
  };

  // resume state
  std::vector<NCPoly<F>> seed;
  int watermark = 0;
  bool resumed_complete = false;
  if (!opts.checkpoint.empty()) {
    std::ifstream in(opts.checkpoint);
    if (in) {
      auto data = detail_gb::read_checkpoint<F>(in, fingerprint, seed);
      if (data.letters != A.dim()) throw std::runtime_error("checkpoint: letter count mismatch");
      watermark = data.processed;
      resumed_complete = data.complete;
    }
  }

  if (resumed_complete) {
    res.gb.gens = seed;
    res.gb.complete = true;
    res.gb.processed_degree = watermark;
  } else {
    detail_gb::Engine<F> eng(A.dim(), opts.jobs);
    if (!seed.empty()) {
      eng.seed_resumed(std::move(seed), watermark);
    } else {
      for (const auto& r : enveloping_relations(A)) eng.seed(r);
    }
    int budget = opts.maxdeg > 0 ? opts.maxdeg : 2 * A.dim() + 4;
    bool complete = false;
    for (;;) {
      complete = eng.run(budget, [&](const detail_gb::Engine<F>& e) { save(e, false, e.active_gens()); });
      if (complete || opts.maxdeg > 0) break;
      budget *= 2;
    }
    res.gb.complete = complete;
    res.gb.processed_degree = eng.processed_degree();
    res.gb.pending_degree = eng.pending_degree();
    res.gb.gens = complete ? eng.reduced_basis() : eng.active_gens();
    if (complete) save(eng, true, res.gb.gens);
  }

  if (!res.gb.complete) {
    res.budget_exhausted = true;
    return res;
  }
  res.normal_by_degree = normal_words_by_degree(res.gb);
  res.dim_u = 0;
  for (const auto& level : res.normal_by_degree) res.dim_u += static_cast<std::int64_t>(level.size());
  res.kernel_basis = envelope_kernel_basis(res.gb);
  res.special = res.kernel_basis.empty();
  return res;
}

}  // namespace mocklie
