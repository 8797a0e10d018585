#include "sseq/simplicial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sseq {

const std::vector<std::size_t> SimplicialComplex::kNoSimplices;

SimplicialComplex SimplicialComplex::from_simplices(
    const std::vector<std::vector<std::string>>& given) {
  SimplicialComplex x;
  std::set<std::string> vertex_set;
  for (const auto& s : given)
    for (const auto& v : s) vertex_set.insert(v);
  x.vertices_.assign(vertex_set.begin(), vertex_set.end());
  std::map<std::string, int> vid;
  for (std::size_t i = 0; i < x.vertices_.size(); ++i)
    vid[x.vertices_[i]] = static_cast<int>(i);

  std::set<std::vector<int>> closed;
  for (const auto& s : given) {
    std::vector<int> ids;
    for (const auto& v : s) ids.push_back(vid[v]);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.empty()) continue;
    const std::size_t n = ids.size();
    for (std::size_t subset = 1; subset < (1u << n); ++subset) {
      std::vector<int> face;
      for (std::size_t b = 0; b < n; ++b)
        if (subset & (1u << b)) face.push_back(ids[b]);
      closed.insert(face);
    }
  }

  std::vector<std::vector<int>> simplices(closed.begin(), closed.end());
  std::sort(simplices.begin(), simplices.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  x.simplices_ = std::move(simplices);
  for (std::size_t id = 0; id < x.simplices_.size(); ++id) {
    x.index_[x.simplices_[id]] = id;
    const std::size_t d = x.simplices_[id].size() - 1;
    if (x.by_dim_.size() <= d) x.by_dim_.resize(d + 1);
    x.by_dim_[d].push_back(id);
  }
  return x;
}

int SimplicialComplex::dimension() const {
  return static_cast<int>(by_dim_.size()) - 1;
}

std::string SimplicialComplex::simplex_label(std::size_t id) const {
  std::ostringstream os;
  const auto& s = simplices_[id];
  for (std::size_t i = 0; i < s.size(); ++i)
    os << (i ? " " : "") << vertices_[static_cast<std::size_t>(s[i])];
  return os.str();
}

std::optional<std::size_t> SimplicialComplex::find(
    const std::vector<int>& sorted_vertex_ids) const {
  auto it = index_.find(sorted_vertex_ids);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> SimplicialComplex::find_by_labels(
    const std::vector<std::string>& verts) const {
  std::vector<int> ids;
  for (const auto& v : verts) {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return std::nullopt;
    ids.push_back(static_cast<int>(it - vertices_.begin()));
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return find(ids);
}

const std::vector<std::size_t>& SimplicialComplex::simplices_of_dim(
    int d) const {
  if (d < 0 || d >= static_cast<int>(by_dim_.size())) return kNoSimplices;
  return by_dim_[static_cast<std::size_t>(d)];
}

std::vector<std::pair<std::size_t, int>> SimplicialComplex::facets(
    std::size_t id) const {
  std::vector<std::pair<std::size_t, int>> out;
  const auto& s = simplices_[id];
  if (s.size() == 1) return out;
  for (std::size_t omit = 0; omit < s.size(); ++omit) {
    std::vector<int> face;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (i != omit) face.push_back(s[i]);
    out.emplace_back(*find(face), static_cast<int>(omit));
  }
  return out;
}

bool SimplicialComplex::mask_closed(const Mask& m) const {
  for (std::size_t id = 0; id < simplices_.size(); ++id) {
    if (!m[id]) continue;
    for (const auto& [fid, sign] : facets(id))
      if (!m[fid]) return false;
  }
  return true;
}

SimplicialComplex::Mask SimplicialComplex::close_mask(Mask m) const {
  // ids are sorted by dimension, so one downward sweep reaches all faces
  for (std::size_t id = simplices_.size(); id-- > 0;) {
    if (!m[id]) continue;
    for (const auto& [fid, sign] : facets(id)) m[fid] = 1;
  }
  return m;
}

SimplicialComplex::Mask SimplicialComplex::skeleton_mask(int k) const {
  Mask m = empty_mask();
  for (std::size_t id = 0; id < simplices_.size(); ++id)
    if (simplex_dim(id) <= k) m[id] = 1;
  return m;
}

bool SimplicialComplex::mask_subset(const Mask& inner,
                                    const Mask& outer) const {
  for (std::size_t id = 0; id < simplices_.size(); ++id)
    if (inner[id] && !outer[id]) return false;
  return true;
}

SimplicialComplex::Mask ClosedSubcomplexFlag::step(int p) const {
  if (p >= 0) return ambient->full_mask();
  const int k = -p - 1;  // steps[k] = Y_{-k-1}
  if (k >= depth()) return ambient->empty_mask();
  return steps[static_cast<std::size_t>(k)];
}

std::vector<std::string> ClosedSubcomplexFlag::validate() const {
  std::vector<std::string> out;
  for (int k = 0; k < depth(); ++k) {
    if (!ambient->mask_closed(steps[static_cast<std::size_t>(k)]))
      out.push_back("flag step " + std::to_string(-k - 1) +
                    " is not a closed subcomplex");
    if (k > 0 && !ambient->mask_subset(steps[static_cast<std::size_t>(k)],
                                       steps[static_cast<std::size_t>(k - 1)]))
      out.push_back("flag step " + std::to_string(-k - 1) +
                    " is not contained in the previous step");
  }
  return out;
}

void ClosedSubcomplexFlag::ensure_valid() const {
  auto v = validate();
  if (v.empty()) return;
  std::string msg = "invalid flag:";
  for (const auto& s : v) msg += " " + s;
  throw input_error(msg);
}

CellularSheaf CellularSheaf::constant(SimplicialComplexPtr x,
                                      std::size_t rank) {
  std::vector<std::size_t> stalks(x->simplex_count(), rank);
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> restr;
  for (std::size_t id = 0; id < x->simplex_count(); ++id)
    for (const auto& [fid, sign] : x->facets(id))
      restr[{fid, id}] = IntMatrix::identity(rank);
  return CellularSheaf(std::move(x), std::move(stalks), std::move(restr));
}

CellularSheaf::CellularSheaf(
    SimplicialComplexPtr x, std::vector<std::size_t> stalk_ranks,
    std::map<std::pair<std::size_t, std::size_t>, IntMatrix> restrictions)
    : space_(std::move(x)),
      stalks_(std::move(stalk_ranks)),
      restr_(std::move(restrictions)) {
  if (stalks_.size() != space_->simplex_count())
    throw input_error("CellularSheaf: one stalk rank per simplex required");
}

const IntMatrix& CellularSheaf::restriction(std::size_t face,
                                            std::size_t coface) const {
  auto it = restr_.find({face, coface});
  if (it == restr_.end())
    throw input_error("CellularSheaf: missing restriction " +
                      space_->simplex_label(face) + " -> " +
                      space_->simplex_label(coface));
  return it->second;
}

std::vector<std::string> CellularSheaf::validate() const {
  std::vector<std::string> out;
  const SimplicialComplex& x = *space_;
  for (std::size_t id = 0; id < x.simplex_count(); ++id) {
    for (const auto& [fid, sign] : x.facets(id)) {
      auto it = restr_.find({fid, id});
      if (it == restr_.end()) {
        out.push_back("missing restriction " + x.simplex_label(fid) + " -> " +
                      x.simplex_label(id));
        continue;
      }
      if (it->second.rows() != stalks_[id] ||
          it->second.cols() != stalks_[fid])
        out.push_back("restriction shape mismatch " + x.simplex_label(fid) +
                      " -> " + x.simplex_label(id));
    }
  }
  if (!out.empty()) return out;
  // Commutation along every two-step face chain fid < mid, mid2 < id.
  for (std::size_t id = 0; id < x.simplex_count(); ++id) {
    if (x.simplex_dim(id) < 2) continue;
    auto mids = x.facets(id);
    for (std::size_t i = 0; i < mids.size(); ++i) {
      for (std::size_t j = i + 1; j < mids.size(); ++j) {
        const std::size_t mid = mids[i].first, mid2 = mids[j].first;
        for (const auto& [fid, s1] : x.facets(mid)) {
          bool shared = false;
          for (const auto& [f2, s2] : x.facets(mid2))
            if (f2 == fid) shared = true;
          if (!shared) continue;
          if (!(restriction(mid, id) * restriction(fid, mid) ==
                restriction(mid2, id) * restriction(fid, mid2)))
            out.push_back("restrictions do not commute along " +
                          x.simplex_label(fid) + " -> " + x.simplex_label(id));
        }
      }
    }
  }
  return out;
}

void CellularSheaf::ensure_valid() const {
  auto v = validate();
  if (v.empty()) return;
  std::string msg = "invalid cellular sheaf:";
  for (const auto& s : v) msg += " " + s;
  throw input_error(msg);
}

std::vector<std::string> SimplicialMap::validate() const {
  std::vector<std::string> out;
  if (vertex_image.size() != source->vertex_labels().size()) {
    out.push_back("vertex assignment size mismatch");
    return out;
  }
  for (std::size_t id = 0; id < source->simplex_count(); ++id) {
    std::vector<int> img;
    for (int v : source->simplex(id))
      img.push_back(vertex_image[static_cast<std::size_t>(v)]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    if (!target->find(img))
      out.push_back("image of " + source->simplex_label(id) +
                    " is not a simplex of the target");
  }
  return out;
}

void SimplicialMap::ensure_valid() const {
  auto v = validate();
  if (v.empty()) return;
  std::string msg = "invalid simplicial map:";
  for (const auto& s : v) msg += " " + s;
  throw input_error(msg);
}

std::size_t SimplicialMap::image_simplex(std::size_t source_id) const {
  std::vector<int> img;
  for (int v : source->simplex(source_id))
    img.push_back(vertex_image[static_cast<std::size_t>(v)]);
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  auto id = target->find(img);
  if (!id) throw input_error("SimplicialMap: image simplex missing");
  return *id;
}

Subdivision barycentric_subdivision(const SimplicialComplexPtr& x) {
  auto chain_label = [&](std::size_t id) {
    std::string s = x->simplex_label(id);
    for (auto& c : s)
      if (c == ' ') c = '.';
    return s;
  };

  // Strict face chains, built bottom-up: chains ending at a simplex extend
  // the chains ending at each of its proper faces.
  std::vector<std::vector<std::size_t>> chains;
  std::vector<std::vector<std::vector<std::size_t>>> ending_at(
      x->simplex_count());
  for (std::size_t id = 0; id < x->simplex_count(); ++id) {
    std::vector<std::vector<std::size_t>> local;
    local.push_back({id});
    std::vector<std::size_t> proper;
    {
      const auto& s = x->simplex(id);
      const std::size_t n = s.size();
      for (std::size_t subset = 1; subset < (1u << n); ++subset) {
        std::vector<int> face;
        for (std::size_t b = 0; b < n; ++b)
          if (subset & (1u << b)) face.push_back(s[b]);
        if (face.size() == n) continue;
        proper.push_back(*x->find(face));
      }
      std::sort(proper.begin(), proper.end());
    }
    for (std::size_t f : proper)
      for (const auto& c : ending_at[f]) {
        auto ext = c;
        ext.push_back(id);
        local.push_back(std::move(ext));
      }
    for (const auto& c : local) chains.push_back(c);
    ending_at[id] = std::move(local);
  }

  std::vector<std::vector<std::string>> simplices;
  for (const auto& c : chains) {
    std::vector<std::string> verts;
    for (std::size_t id : c) verts.push_back(chain_label(id));
    simplices.push_back(std::move(verts));
  }

  Subdivision sub;
  auto sc = std::make_shared<SimplicialComplex>(
      SimplicialComplex::from_simplices(simplices));
  sub.complex = sc;

  std::map<std::string, std::size_t> label_to_original;
  for (std::size_t id = 0; id < x->simplex_count(); ++id)
    label_to_original[chain_label(id)] = id;
  sub.vertex_to_original.resize(sc->vertex_labels().size());
  for (std::size_t v = 0; v < sc->vertex_labels().size(); ++v)
    sub.vertex_to_original[v] = label_to_original.at(sc->vertex_labels()[v]);

  sub.chains.resize(sc->simplex_count());
  for (std::size_t id = 0; id < sc->simplex_count(); ++id) {
    std::vector<std::size_t> orig;
    for (int v : sc->simplex(id))
      orig.push_back(sub.vertex_to_original[static_cast<std::size_t>(v)]);
    std::sort(orig.begin(), orig.end(), [&](std::size_t a, std::size_t b) {
      return x->simplex(a).size() < x->simplex(b).size();
    });
    sub.chains[id] = std::move(orig);
  }
  return sub;
}

SimplicialComplex::Mask Subdivision::subdivided_mask(
    const SimplicialComplex::Mask& m) const {
  SimplicialComplex::Mask out = complex->empty_mask();
  for (std::size_t id = 0; id < complex->simplex_count(); ++id) {
    bool inside = true;
    for (std::size_t orig : chains[id])
      if (!m[orig]) inside = false;
    out[id] = inside ? 1 : 0;
  }
  return out;
}

SimplicialComplex::Mask Subdivision::star_complement_mask(
    const SimplicialComplex::Mask& m) const {
  SimplicialComplex::Mask out = complex->empty_mask();
  for (std::size_t id = 0; id < complex->simplex_count(); ++id) {
    bool avoids = true;
    for (std::size_t orig : chains[id])
      if (m[orig]) avoids = false;
    out[id] = avoids ? 1 : 0;
  }
  return out;
}

CellularSheaf Subdivision::pullback(const CellularSheaf& s) const {
  const SimplicialComplex& sc = *complex;
  const SimplicialComplex& orig = s.space();
  std::vector<std::size_t> stalks(sc.simplex_count());
  for (std::size_t id = 0; id < sc.simplex_count(); ++id)
    stalks[id] = s.stalk_rank(chains[id].back());
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> restr;
  // Composite restriction along any facet path between nested simplices;
  // sheaf consistency makes the path choice immaterial.
  auto composite = [&](std::size_t a, std::size_t b) {
    IntMatrix acc = IntMatrix::identity(s.stalk_rank(a));
    std::size_t cur = a;
    while (cur != b) {
      const auto& bverts = orig.simplex(b);
      const auto& cverts = orig.simplex(cur);
      std::vector<int> candidate = cverts;
      for (int v : bverts) {
        if (std::find(cverts.begin(), cverts.end(), v) == cverts.end()) {
          candidate.push_back(v);
          std::sort(candidate.begin(), candidate.end());
          break;
        }
      }
      std::size_t next = *orig.find(candidate);
      acc = s.restriction(cur, next) * acc;
      cur = next;
    }
    return acc;
  };
  for (std::size_t id = 0; id < sc.simplex_count(); ++id) {
    for (const auto& [fid, sign] : sc.facets(id)) {
      std::size_t a = chains[fid].back();
      std::size_t b = chains[id].back();
      restr[{fid, id}] = composite(a, b);
    }
  }
  return CellularSheaf(complex, std::move(stalks), std::move(restr));
}

}  // namespace sseq
