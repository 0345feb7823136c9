#include "critwalk/io.hpp"

#include <charconv>
#include <cmath>
#include <variant>

#include <json.hpp>

#include "critwalk/errors.hpp"

namespace critwalk::io {

namespace {

using Json = nlohmann::ordered_json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

struct Extras {
  bool halfedge = false;
  bool simple = false;
  bool attributes = false;
  bool intervals = false;
};

Extras extras_of(const std::vector<harness::TrialSummary>& summaries) {
  Extras e;
  for (const auto& s : summaries) {
    e.halfedge |= s.halfedge_excursion_max.has_value();
    e.simple |= s.simple_flag.has_value();
    e.attributes |= s.attributes_discovered_total.has_value();
    e.intervals |= s.intervals_total.has_value();
  }
  return e;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, result.ptr);
}

void write_summaries_csv(std::ostream& out, const std::vector<harness::TrialSummary>& summaries) {
  const Extras e = extras_of(summaries);
  out << "trial,cmax,n_components,max_active,steps";
  if (e.halfedge) out << ",halfedge_excursion_max";
  if (e.simple) out << ",simple_flag";
  if (e.attributes) out << ",attributes_discovered_total";
  if (e.intervals) out << ",intervals_total";
  out << '\n';
  for (const auto& s : summaries) {
    out << s.trial << ',' << s.cmax << ',' << s.n_components << ',' << s.max_active << ',' << s.steps;
    if (e.halfedge) out << ',' << s.halfedge_excursion_max.value_or(0);
    if (e.simple) out << ',' << (s.simple_flag.value_or(false) ? 1 : 0);
    if (e.attributes) out << ',' << s.attributes_discovered_total.value_or(0);
    if (e.intervals) out << ',' << s.intervals_total.value_or(0);
    out << '\n';
  }
}

std::string summaries_json(const std::vector<harness::TrialSummary>& summaries) {
  Json arr = Json::array();
  for (const auto& s : summaries) {
    Json row;
    row["trial"] = s.trial;
    row["cmax"] = s.cmax;
    row["n_components"] = s.n_components;
    row["max_active"] = s.max_active;
    row["steps"] = s.steps;
    if (s.halfedge_excursion_max) row["halfedge_excursion_max"] = *s.halfedge_excursion_max;
    if (s.simple_flag) row["simple_flag"] = *s.simple_flag ? 1 : 0;
    if (s.attributes_discovered_total) row["attributes_discovered_total"] = *s.attributes_discovered_total;
    if (s.intervals_total) row["intervals_total"] = *s.intervals_total;
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

void write_tail_csv(std::ostream& out, const std::vector<harness::TailCurve>& curves) {
  out << "direction,A,threshold,trials,hits,phat,ci_lo,ci_hi\n";
  for (const auto& curve : curves) {
    for (const auto& r : curve.rows) {
      out << harness::direction_name(curve.direction) << ',' << format_double(r.a) << ','
          << format_double(r.threshold) << ',' << r.trials << ',' << r.hits << ',' << format_double(r.phat) << ','
          << format_double(r.ci_lo) << ',' << format_double(r.ci_hi) << '\n';
    }
  }
}

std::string tail_json(const std::vector<harness::TailCurve>& curves) {
  Json arr = Json::array();
  for (const auto& curve : curves) {
    for (const auto& r : curve.rows) {
      Json row;
      row["direction"] = harness::direction_name(curve.direction);
      row["A"] = number(r.a);
      row["threshold"] = number(r.threshold);
      row["trials"] = r.trials;
      row["hits"] = r.hits;
      row["phat"] = number(r.phat);
      row["ci_lo"] = number(r.ci_lo);
      row["ci_hi"] = number(r.ci_hi);
      arr.push_back(std::move(row));
    }
  }
  return arr.dump(2) + "\n";
}

void write_fit_csv(std::ostream& out, const std::vector<FitRecord>& fits) {
  out << "direction,slope,ci_lo,ci_hi,rows_used\n";
  for (const auto& f : fits) {
    out << harness::direction_name(f.direction) << ',';
    if (f.fit) {
      out << format_double(f.fit->slope) << ',' << format_double(f.fit->ci_lo) << ','
          << format_double(f.fit->ci_hi) << ',' << f.fit->rows_used << '\n';
    } else {
      out << ",,," << f.usable_rows << '\n';
    }
  }
}

std::string fit_json(const std::vector<FitRecord>& fits) {
  Json arr = Json::array();
  for (const auto& f : fits) {
    Json row;
    row["direction"] = harness::direction_name(f.direction);
    if (f.fit) {
      row["slope"] = number(f.fit->slope);
      row["ci_lo"] = number(f.fit->ci_lo);
      row["ci_hi"] = number(f.fit->ci_hi);
      row["rows_used"] = f.fit->rows_used;
      row["intercept"] = number(f.fit->intercept);
    } else {
      row["slope"] = nullptr;
      row["ci_lo"] = nullptr;
      row["ci_hi"] = nullptr;
      row["rows_used"] = f.usable_rows;
      row["error"] = f.error;
    }
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

std::string critical_point_json(const quantum::CriticalPoint& point) {
  Json j;
  j["beta"] = number(point.beta);
  j["lambdas"] = Json::array();
  for (double l : point.lambda_roots) j["lambdas"].push_back(number(l));
  j["residuals"] = Json::array();
  for (double r : point.residuals) j["residuals"].push_back(number(r));
  return j.dump(2) + "\n";
}

void write_estimates_csv(std::ostream& out, const std::vector<walk::Estimate>& estimates) {
  out << "law,params,horizon,j,trials,phat,ci_lo,ci_hi\n";
  for (const auto& e : estimates) {
    out << e.law << ',' << e.params << ',' << e.horizon << ',' << e.j << ',' << e.trials << ','
        << format_double(e.phat) << ',' << format_double(e.ci_lo) << ',' << format_double(e.ci_hi) << '\n';
  }
}

std::string stream_to_json(const RngStream& stream) {
  Json j;
  j["stream"] = stream.serialize();
  return j.dump();
}

RngStream stream_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("stream checkpoint is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("stream") || !j["stream"].is_string()) {
    throw ValidationError("stream checkpoint lacks a \"stream\" token");
  }
  try {
    return RngStream::deserialize(j["stream"].get<std::string>());
  } catch (const ParameterError& e) {
    throw ValidationError(std::string("stream checkpoint: ") + e.what());
  }
}

std::string instance_to_json(const MaterializedInstance& instance) {
  Json j = std::visit(
      Overloaded{
          [](const SimpleGraph& g) {
            Json o;
            o["kind"] = "simple";
            o["n"] = g.n;
            o["edges"] = Json::array();
            for (auto [a, b] : g.edges) o["edges"].push_back({a, b});
            return o;
          },
          [](const ConfigurationInstance& c) {
            Json o;
            o["kind"] = "configuration";
            o["n"] = c.n;
            o["d"] = c.d;
            o["pairs"] = Json::array();
            for (auto [a, b] : c.pairs) o["pairs"].push_back({a, b});
            o["retained"] = Json::array();
            for (auto bit : c.retained) o["retained"].push_back(bit);
            return o;
          },
          [](const BipartiteInstance& b) {
            Json o;
            o["kind"] = "bipartite";
            o["n"] = b.n;
            o["k"] = b.k;
            o["members"] = b.members;
            o["projection"] = Json::array();
            for (auto [x, y] : b.projection.edges) o["projection"].push_back({x, y});
            return o;
          },
          [](const QuantumInstance& q) {
            Json o;
            o["kind"] = "quantum";
            o["n"] = q.n;
            o["theta"] = number(q.theta);
            o["lambda"] = number(q.lambda);
            o["holes"] = q.holes;
            o["links"] = Json::array();
            for (const auto& l : q.links) o["links"].push_back({{"u", l.u}, {"v", l.v}, {"time", number(l.time)}});
            o["uniforms"] = q.uniforms;
            return o;
          },
      },
      instance);
  return j.dump() + "\n";
}

void write_plot_script(std::ostream& out, const std::string& tail_file, const std::vector<FitRecord>& fits) {
  out << "#!/usr/bin/env python3\n"
         "import csv\n"
         "import math\n"
         "import os\n"
         "import sys\n\n"
         "import matplotlib\n"
         "matplotlib.use(\"Agg\")\n"
         "import matplotlib.pyplot as plt\n\n"
         "HERE = os.path.dirname(os.path.abspath(__file__))\n"
         "DATA = os.path.join(HERE, \""
      << tail_file
      << "\")\n"
         "FITS = {\n";
  for (const auto& f : fits) {
    if (!f.fit) continue;
    out << "    \"" << harness::direction_name(f.direction) << "\": (" << format_double(f.fit->slope) << ", "
        << format_double(f.fit->intercept) << "),\n";
  }
  out << "}\n\n"
         "points = {}\n"
         "with open(DATA, newline=\"\") as fh:\n"
         "    for row in csv.DictReader(fh):\n"
         "        p = float(row[\"phat\"])\n"
         "        if 0.0 < p < 1.0:\n"
         "            points.setdefault(row[\"direction\"], []).append(\n"
         "                (math.log(float(row[\"A\"])), math.log(-math.log(p))))\n\n"
         "fig, ax = plt.subplots()\n"
         "for direction, xy in sorted(points.items()):\n"
         "    xs = [x for x, _ in xy]\n"
         "    ys = [y for _, y in xy]\n"
         "    ax.plot(xs, ys, \"o\", label=direction + \" tail\")\n"
         "    if direction in FITS:\n"
         "        slope, intercept = FITS[direction]\n"
         "        lo, hi = min(xs), max(xs)\n"
         "        ax.plot([lo, hi], [intercept + slope * lo, intercept + slope * hi], \"-\",\n"
         "                label=\"%s fit, slope %.3f\" % (direction, slope))\n"
         "ax.set_xlabel(\"log A\")\n"
         "ax.set_ylabel(\"log(-log phat)\")\n"
         "ax.legend()\n"
         "target = sys.argv[1] if len(sys.argv) > 1 else os.path.join(HERE, \"tail.png\")\n"
         "fig.savefig(target, dpi=150)\n";
}

}  // namespace critwalk::io
