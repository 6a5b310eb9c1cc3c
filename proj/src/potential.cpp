// Copyright 2026 The scatlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scatlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "scatlab/error.hpp"
#include "scatlab/quadrature.hpp"

namespace scatlab {

namespace {

void require_support(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw ValidationError(fmt::format("support radius a must be positive and finite, got {}", a));
}

// Integral of s (alpha + beta s) over [x0, x1].
double seg_moment(const Segment& s, double x0, double x1) {
  return s.alpha * (x1 * x1 - x0 * x0) / 2.0 + s.beta * (x1 * x1 * x1 - x0 * x0 * x0) / 3.0;
}

double seg_abs_moment(const Segment& s, double x0, double x1) {
  if (s.beta != 0.0) {
    const double root = -s.alpha / s.beta;
    if (root > x0 && root < x1)
      return std::abs(seg_moment(s, x0, root)) + std::abs(seg_moment(s, root, x1));
  }
  return std::abs(seg_moment(s, x0, x1));
}

}  // namespace

Potential Potential::zero(double a) {
  require_support(a);
  Potential q;
  q.kind_ = PotentialKind::zero;
  q.a_ = a;
  q.finalize_segments({});
  return q;
}

Potential Potential::piecewise(double a, std::vector<Piece> pieces) {
  require_support(a);
  std::vector<Segment> raw;
  double prev_hi = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || !std::isfinite(p.value))
      throw ValidationError(fmt::format("piece {} has a non-finite entry", i));
    if (p.lo < 0.0) throw ValidationError(fmt::format("piece {} has negative radius {}", i, p.lo));
    if (!(p.hi > p.lo))
      throw ValidationError(fmt::format("piece {} is empty or reversed: [{}, {}]", i, p.lo, p.hi));
    if (p.hi > a)
      throw ValidationError(
          fmt::format("piece {} [{}, {}]: support exceeds a = {}", i, p.lo, p.hi, a));
    if (i > 0 && p.lo < prev_hi)
      throw ValidationError(fmt::format("pieces must be sorted and disjoint (piece {})", i));
    prev_hi = p.hi;
    raw.push_back({p.lo, p.hi, p.value, 0.0});
  }
  Potential q;
  q.kind_ = PotentialKind::piecewise;
  q.a_ = a;
  q.pieces_ = std::move(pieces);
  q.finalize_segments(std::move(raw));
  return q;
}

Potential Potential::table(double a, std::vector<Sample> samples) {
  require_support(a);
  if (samples.empty()) throw ValidationError("table potential needs at least one sample");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    if (!std::isfinite(s.r) || !std::isfinite(s.q))
      throw ValidationError(fmt::format("sample {} has a non-finite entry", i));
    if (s.r < 0.0) throw ValidationError(fmt::format("sample {} has negative radius {}", i, s.r));
    if (i > 0 && !(s.r > samples[i - 1].r))
      throw ValidationError(fmt::format("sample radii must be strictly increasing (sample {})", i));
  }
  if (samples.back().r > a)
    throw ValidationError(
        fmt::format("sample at r = {}: support exceeds a = {}", samples.back().r, a));
  std::vector<Segment> raw;
  if (samples.front().r > 0.0) raw.push_back({0.0, samples.front().r, samples.front().q, 0.0});
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const Sample& s0 = samples[i];
    const Sample& s1 = samples[i + 1];
    const double beta = (s1.q - s0.q) / (s1.r - s0.r);
    raw.push_back({s0.r, s1.r, s0.q - beta * s0.r, beta});
  }
  if (samples.back().r < a) raw.push_back({samples.back().r, a, samples.back().q, 0.0});
  Potential q;
  q.kind_ = PotentialKind::table;
  q.a_ = a;
  q.samples_ = std::move(samples);
  q.finalize_segments(std::move(raw));
  return q;
}

Potential Potential::from_segments(double a, std::vector<Segment> segments, PotentialKind kind) {
  require_support(a);
  Potential q;
  q.kind_ = kind;
  q.a_ = a;
  q.finalize_segments(std::move(segments));
  return q;
}

void Potential::finalize_segments(std::vector<Segment> raw) {
  std::sort(raw.begin(), raw.end(), [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
  segments_.clear();
  double at = 0.0;
  for (const Segment& s : raw) {
    if (s.lo > at) segments_.push_back({at, s.lo, 0.0, 0.0});
    segments_.push_back(s);
    at = s.hi;
  }
  if (at < a_) segments_.push_back({at, a_, 0.0, 0.0});
}

double Potential::operator()(double r) const {
  if (!(r >= 0.0)) throw DomainError(fmt::format("potential evaluated at negative radius {}", r));
  if (r > a_) return 0.0;
  auto it = std::lower_bound(segments_.begin(), segments_.end(), r,
                             [](const Segment& s, double x) { return s.hi < x; });
  if (it == segments_.end()) return 0.0;
  return it->at(r);
}

std::vector<double> Potential::breakpoints() const {
  std::vector<double> out;
  for (const Segment& s : segments_)
    if (s.hi > 0.0 && s.hi <= a_) out.push_back(s.hi);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> Potential::jumps() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const double x = segments_[i].hi;
    const double left = segments_[i].at(x);
    const double right = i + 1 < segments_.size() ? segments_[i + 1].at(x) : 0.0;
    if (left != right) out.push_back(x);
  }
  return out;
}

bool Potential::is_zero() const noexcept {
  return std::all_of(segments_.begin(), segments_.end(),
                     [](const Segment& s) { return s.alpha == 0.0 && s.beta == 0.0; });
}

double Potential::cumulative_moment(double R) const {
  double sum = 0.0;
  for (const Segment& s : segments_) {
    if (s.lo >= R) break;
    sum += seg_moment(s, s.lo, std::min(s.hi, R));
  }
  return sum;
}

double Potential::cumulative_abs_moment(double R) const {
  double sum = 0.0;
  for (const Segment& s : segments_) {
    if (s.lo >= R) break;
    sum += seg_abs_moment(s, s.lo, std::min(s.hi, R));
  }
  return sum;
}

double Potential::first_moment() const {
  double sum = 0.0;
  for (const Segment& s : segments_) {
    if (s.alpha == 0.0 && s.beta == 0.0) continue;
    auto f = [&s](double r) { return r * std::abs(s.at(r)); };
    std::vector<double> breaks;
    if (s.beta != 0.0) breaks.push_back(-s.alpha / s.beta);
    sum += quad::integrate_split(f, s.lo, s.hi, breaks, 1e-13).value;
  }
  return sum;
}

Potential Potential::scaled(double c) const {
  if (!std::isfinite(c)) throw ValidationError("scale factor must be finite");
  Potential q = *this;
  for (Piece& p : q.pieces_) p.value *= c;
  for (Sample& s : q.samples_) s.q *= c;
  for (Segment& s : q.segments_) {
    s.alpha *= c;
    s.beta *= c;
  }
  return q;
}

DifferencePotential::DifferencePotential(Potential q1, Potential q2)
    : q1_(std::move(q1)), q2_(std::move(q2)), p_(Potential::zero(1.0)) {
  const double a = std::max(q1_.support(), q2_.support());
  std::vector<double> cuts{0.0};
  for (const Segment& s : q1_.segments()) cuts.push_back(s.hi);
  for (const Segment& s : q2_.segments()) cuts.push_back(s.hi);
  cuts.push_back(a);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto coeffs = [](const Potential& q, double mid) -> std::pair<double, double> {
    if (mid > q.support()) return {0.0, 0.0};
    for (const Segment& s : q.segments())
      if (mid > s.lo && mid <= s.hi) return {s.alpha, s.beta};
    return {0.0, 0.0};
  };
  std::vector<Segment> segs;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    const auto [a1, b1] = coeffs(q1_, mid);
    const auto [a2, b2] = coeffs(q2_, mid);
    segs.push_back({cuts[k], cuts[k + 1], a1 - a2, b1 - b2});
  }
  p_ = Potential::from_segments(a, std::move(segs), PotentialKind::difference);
  p_.set_id(q1_.id() + "-" + q2_.id());
}

namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(fmt::format("field '{}': expected a number", where));
  return j.get<double>();
}

const json& get_array(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(fmt::format("missing field '{}'", key));
  if (!it->is_array()) throw ParseError(fmt::format("field '{}': expected an array", key));
  return *it;
}

std::string describe_position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return fmt::format("line {}, column {}", line, col);
}

}  // namespace

Potential load_potential(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("invalid JSON at {}: {}", describe_position(text, e.byte), e.what()));
  }
  if (!doc.is_object()) throw ParseError("potential document must be a JSON object");
  auto kind_it = doc.find("kind");
  if (kind_it == doc.end() || !kind_it->is_string())
    throw ParseError("field 'kind': expected one of \"zero\", \"piecewise\", \"table\"");
  auto a_it = doc.find("a");
  if (a_it == doc.end()) throw ParseError("missing field 'a'");
  const double a = get_number(*a_it, "a");
  const std::string kind = kind_it->get<std::string>();

  Potential q = [&]() {
    if (kind == "zero") return Potential::zero(a);
    if (kind == "piecewise") {
      std::vector<Piece> pieces;
      const json& arr = get_array(doc, "pieces");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& e = arr[i];
        if (!e.is_array() || e.size() != 3)
          throw ParseError(fmt::format("field 'pieces[{}]': expected [lo, hi, value]", i));
        const std::string w = fmt::format("pieces[{}]", i);
        pieces.push_back({get_number(e[0], w), get_number(e[1], w), get_number(e[2], w)});
      }
      return Potential::piecewise(a, std::move(pieces));
    }
    if (kind == "table") {
      std::vector<Sample> samples;
      const json& arr = get_array(doc, "samples");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& e = arr[i];
        if (!e.is_array() || e.size() != 2)
          throw ParseError(fmt::format("field 'samples[{}]': expected [r, value]", i));
        const std::string w = fmt::format("samples[{}]", i);
        samples.push_back({get_number(e[0], w), get_number(e[1], w)});
      }
      return Potential::table(a, std::move(samples));
    }
    throw ParseError(fmt::format("field 'kind': unknown kind \"{}\"", kind));
  }();
  if (auto id = doc.find("id"); id != doc.end()) {
    if (!id->is_string()) throw ParseError("field 'id': expected a string");
    q.set_id(id->get<std::string>());
  }
  return q;
}

Potential load_potential_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot read potential file '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return load_potential(buf.str());
}

std::string serialize_potential(const Potential& q) {
  json doc;
  switch (q.kind()) {
    case PotentialKind::zero:
      doc["kind"] = "zero";
      break;
    case PotentialKind::piecewise: {
      doc["kind"] = "piecewise";
      json arr = json::array();
      for (const Piece& p : q.pieces()) arr.push_back({p.lo, p.hi, p.value});
      doc["pieces"] = arr;
      break;
    }
    case PotentialKind::table: {
      doc["kind"] = "table";
      json arr = json::array();
      for (const Sample& s : q.samples()) arr.push_back({s.r, s.q});
      doc["samples"] = arr;
      break;
    }
    case PotentialKind::difference:
      throw ValidationError("difference potentials have no document form");
  }
  doc["a"] = q.support();
  if (!q.id().empty()) doc["id"] = q.id();
  return doc.dump(2);
}

bool operator==(const Potential& x, const Potential& y) {
  if (x.kind() != y.kind() || x.support() != y.support() || x.id() != y.id()) return false;
  if (x.pieces().size() != y.pieces().size() || x.samples().size() != y.samples().size())
    return false;
  for (std::size_t i = 0; i < x.pieces().size(); ++i) {
    const Piece& p = x.pieces()[i];
    const Piece& r = y.pieces()[i];
    if (p.lo != r.lo || p.hi != r.hi || p.value != r.value) return false;
  }
  for (std::size_t i = 0; i < x.samples().size(); ++i) {
    if (x.samples()[i].r != y.samples()[i].r || x.samples()[i].q != y.samples()[i].q) return false;
  }
  return true;
}

}  // namespace scatlab
