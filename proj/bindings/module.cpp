#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "grasslearn/adapt.hpp"
#include "grasslearn/clustering.hpp"
#include "grasslearn/completion.hpp"
#include "grasslearn/datasets.hpp"
#include "grasslearn/gda.hpp"
#include "grasslearn/grnet.hpp"
#include "grasslearn/kernels.hpp"
#include "grasslearn/manifold.hpp"
#include "grasslearn/optim.hpp"

namespace py = pybind11;
using namespace grasslearn;

namespace {

// Lets Python subclasses of Objective drive the optimizer.
class PyObjective : public Objective {
 public:
  double value(const GrassmannPoint& x) const override {
    PYBIND11_OVERRIDE_PURE(double, Objective, value, x);
  }
  Matrix euclidean_grad(const GrassmannPoint& x) const override {
    PYBIND11_OVERRIDE_PURE(Matrix, Objective, euclidean_grad, x);
  }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Subspace geometry and learning on the Grassmann manifold";
  m.attr("__version__") = "0.1.0";

  // Exceptions; the derived classes register last so they translate first.
  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  // --- manifold ---
  py::class_<GrassmannPoint>(m, "GrassmannPoint")
      .def(py::init([](const Matrix& a) { return GrassmannPoint::from_matrix(a); }),
           py::arg("matrix"), "Orthonormalize the columns and take their span.")
      .def_static("from_matrix", &GrassmannPoint::from_matrix, py::arg("matrix"))
      .def_static("from_orthonormal", &GrassmannPoint::from_orthonormal,
                  py::arg("q"))
      .def_property_readonly(
          "basis", [](const GrassmannPoint& p) -> Matrix { return p.basis(); })
      .def_property_readonly("n", &GrassmannPoint::n)
      .def_property_readonly("k", &GrassmannPoint::k)
      .def("__repr__", [](const GrassmannPoint& p) {
        return "GrassmannPoint(n=" + std::to_string(p.n()) +
               ", k=" + std::to_string(p.k()) + ")";
      });

  py::class_<PrincipalAngles>(m, "PrincipalAngles")
      .def_readonly("angles", &PrincipalAngles::angles)
      .def("cosines", &PrincipalAngles::cosines);

  m.def("principal_angles", &principal_angles, py::arg("x"), py::arg("y"),
        "Ascending principal angles between two subspaces.");
  m.def("metric_names", [] {
    std::vector<std::string> names;
    for (DistanceMetric metric : all_distance_metrics())
      names.push_back(to_string(metric));
    return names;
  });
  m.def(
      "distance",
      [](const std::string& metric, const GrassmannPoint& x,
         const GrassmannPoint& y) {
        return distance(distance_metric_from_string(metric), x, y);
      },
      py::arg("metric"), py::arg("x"), py::arg("y"),
      "Distance under a named metric; see metric_names().");
  m.def(
      "distances_from_angles",
      [](const std::string& metric, const PrincipalAngles& pa) {
        return distance(distance_metric_from_string(metric), pa);
      },
      py::arg("metric"), py::arg("pa"));
  m.def("same_subspace", &same_subspace, py::arg("x"), py::arg("y"),
        py::arg("tol") = 1e-8);

  py::class_<TangentVector>(m, "TangentVector")
      .def(py::init<GrassmannPoint, Matrix>(), py::arg("base"), py::arg("delta"))
      .def_property_readonly("base", &TangentVector::base)
      .def_property_readonly(
          "delta", [](const TangentVector& t) -> Matrix { return t.delta(); })
      .def("norm", &TangentVector::norm)
      .def("scaled", &TangentVector::scaled, py::arg("c"));

  m.def("project_to_tangent", &project_to_tangent, py::arg("x"), py::arg("g"));
  m.def("geodesic_point", &geodesic_point, py::arg("direction"), py::arg("t"));
  m.def("exp_map", &exp_map, py::arg("direction"));
  m.def("log_map", &log_map, py::arg("x"), py::arg("y"));
  m.def(
      "random_point",
      [](Index n, Index k, uint64_t seed) {
        Rng rng(seed);
        return random_point(n, k, rng);
      },
      py::arg("n"), py::arg("k"), py::arg("seed"));

  // --- kernels ---
  py::class_<KernelSpec>(m, "KernelSpec")
      .def_static("projection", &KernelSpec::projection)
      .def_static("binet_cauchy", &KernelSpec::binet_cauchy)
      .def_static(
          "gaussian",
          [](double sigma, const std::string& base) {
            return KernelSpec::gaussian(sigma, distance_metric_from_string(base));
          },
          py::arg("sigma"), py::arg("base") = "projection")
      .def_property_readonly(
          "kind", [](const KernelSpec& s) { return to_string(s.kind); })
      .def_readonly("sigma", &KernelSpec::sigma)
      .def_property_readonly(
          "base", [](const KernelSpec& s) { return to_string(s.base); });

  m.def("kernel_eval", &kernel_eval, py::arg("spec"), py::arg("x"), py::arg("y"));
  m.def(
      "gram",
      [](const KernelSpec& spec, const std::vector<GrassmannPoint>& points) {
        return gram(spec, points).entries;
      },
      py::arg("spec"), py::arg("points"),
      "Pairwise kernel matrix, verified positive semidefinite.");
  m.def("kernel_distance", &kernel_distance, py::arg("spec"), py::arg("x"),
        py::arg("y"));

  // --- optimization ---
  py::class_<Objective, PyObjective>(m, "Objective")
      .def(py::init<>())
      .def("value", &Objective::value, py::arg("x"))
      .def("euclidean_grad", &Objective::euclidean_grad, py::arg("x"));

  py::class_<OptimConfig>(m, "OptimConfig")
      .def(py::init<>())
      .def_readwrite("max_iters", &OptimConfig::max_iters)
      .def_readwrite("grad_tol", &OptimConfig::grad_tol)
      .def_readwrite("armijo_c", &OptimConfig::armijo_c)
      .def_readwrite("backtrack", &OptimConfig::backtrack)
      .def_readwrite("init_step", &OptimConfig::init_step)
      .def_readwrite("min_step", &OptimConfig::min_step);

  py::class_<TracePoint>(m, "TracePoint")
      .def_readonly("value", &TracePoint::value)
      .def_readonly("grad_norm", &TracePoint::grad_norm)
      .def_readonly("step", &TracePoint::step);

  py::class_<OptimResult>(m, "OptimResult")
      .def_readonly("x", &OptimResult::x)
      .def_readonly("value", &OptimResult::value)
      .def_property_readonly(
          "status", [](const OptimResult& r) { return to_string(r.status); })
      .def_readonly("iterations", &OptimResult::iterations)
      .def_readonly("trace", &OptimResult::trace);

  m.def("riemannian_grad", &riemannian_grad, py::arg("objective"), py::arg("x"));
  m.def("minimize", &minimize, py::arg("objective"), py::arg("init"),
        py::arg("config") = OptimConfig{},
        "Steepest descent along geodesics with Armijo backtracking.");

  // --- discriminant analysis ---
  py::class_<LabeledGrassmannSet>(m, "LabeledGrassmannSet")
      .def(py::init([](std::vector<GrassmannPoint> points, std::vector<int> labels) {
             return LabeledGrassmannSet{std::move(points), std::move(labels)};
           }),
           py::arg("points"), py::arg("labels"))
      .def_readwrite("points", &LabeledGrassmannSet::points)
      .def_readwrite("labels", &LabeledGrassmannSet::labels);

  py::class_<GdaScatter>(m, "GdaScatter")
      .def_readonly("sb", &GdaScatter::sb)
      .def_readonly("sw", &GdaScatter::sw);

  py::class_<GdaModel>(m, "GdaModel")
      .def_readonly("gram", &GdaModel::gram)
      .def_readonly("alpha", &GdaModel::alpha)
      .def_readonly("quotients", &GdaModel::quotients)
      .def_readonly("epsilon", &GdaModel::epsilon)
      .def_readonly("train_labels", &GdaModel::train_labels)
      .def_readonly("classes", &GdaModel::classes)
      .def_readonly("class_means", &GdaModel::class_means)
      .def_readonly("spec", &GdaModel::spec);

  m.def("gda_scatter", &gda_scatter, py::arg("gram"), py::arg("labels"));
  m.def("gda_default_epsilon", &gda_default_epsilon, py::arg("gram"));
  m.def("gda_quotient", &gda_quotient, py::arg("scatter"), py::arg("epsilon"),
        py::arg("dir"));
  m.def(
      "gda_fit",
      [](const LabeledGrassmannSet& data, const KernelSpec& spec,
         std::optional<double> epsilon, std::optional<int> dims) {
        const double eps =
            epsilon ? *epsilon
                    : gda_default_epsilon(gram(spec, data.points).entries);
        const int want =
            dims ? *dims : static_cast<int>(class_values(data.labels).size()) - 1;
        return gda_fit(data, spec, eps, want);
      },
      py::arg("data"), py::arg("spec"), py::arg("epsilon") = py::none(),
      py::arg("m") = py::none(),
      "Fit discriminant directions; epsilon and m default from the data.");
  m.def("gda_kernel_rows", &gda_kernel_rows, py::arg("model"),
        py::arg("train_points"), py::arg("queries"));
  m.def("gda_embed", &gda_embed, py::arg("model"), py::arg("kernel_rows"));
  m.def("gda_classify", &gda_classify, py::arg("model"), py::arg("kernel_rows"));

  // --- clustering ---
  m.def("affinity", &affinity, py::arg("items"), py::arg("sigma"));
  m.def(
      "laplacian",
      [](const Matrix& w, const std::string& kind) {
        return laplacian(w, laplacian_kind_from_string(kind));
      },
      py::arg("w"), py::arg("kind") = "normalized");
  m.def("spectral_embed", &spectral_embed, py::arg("lap"), py::arg("k"));

  py::class_<SparseSpectralConfig>(m, "SparseSpectralConfig")
      .def(py::init<>())
      .def_readwrite("k", &SparseSpectralConfig::k)
      .def_readwrite("beta", &SparseSpectralConfig::beta)
      .def_readwrite("mu", &SparseSpectralConfig::mu)
      .def_readwrite("optim", &SparseSpectralConfig::optim);

  py::class_<SparseSpectralResult>(m, "SparseSpectralResult")
      .def_readonly("u", &SparseSpectralResult::u)
      .def_readonly("opt", &SparseSpectralResult::opt);

  m.def("sparse_spectral", &sparse_spectral, py::arg("lap"),
        py::arg("config") = SparseSpectralConfig{});
  m.def(
      "cluster_rows",
      [](const Matrix& embedding, int k, bool normalize_rows, uint64_t seed) {
        Rng rng(seed);
        return cluster_rows(embedding, k, normalize_rows, rng);
      },
      py::arg("embedding"), py::arg("k"), py::arg("normalize_rows") = true,
      py::arg("seed") = 0);

  py::class_<GrassmannKmeansResult>(m, "GrassmannKmeansResult")
      .def_readonly("labels", &GrassmannKmeansResult::labels)
      .def_readonly("centers", &GrassmannKmeansResult::centers)
      .def_readonly("objective_trace", &GrassmannKmeansResult::objective_trace)
      .def_readonly("iterations", &GrassmannKmeansResult::iterations);

  m.def(
      "grassmann_kmeans",
      [](const std::vector<GrassmannPoint>& points, int n_clusters, int max_iters,
         uint64_t seed) {
        Rng rng(seed);
        return grassmann_kmeans(points, n_clusters, max_iters, rng);
      },
      py::arg("points"), py::arg("n_clusters"), py::arg("max_iters") = 100,
      py::arg("seed") = 0);
  m.def("best_match_accuracy", &best_match_accuracy, py::arg("predicted"),
        py::arg("truth"));
  m.def("adjusted_rand_index", &adjusted_rand_index, py::arg("a"), py::arg("b"));

  // --- completion ---
  py::class_<MaskedMatrix>(m, "MaskedMatrix")
      .def(py::init(&make_masked), py::arg("values"), py::arg("mask"))
      .def_readonly("values", &MaskedMatrix::values)
      .def_readonly("mask", &MaskedMatrix::mask);

  m.def("make_masked", &make_masked, py::arg("values"), py::arg("mask"));
  m.def("mask_apply", &mask_apply, py::arg("m"));

  py::class_<FrobeniusEval>(m, "FrobeniusEval")
      .def_readonly("value", &FrobeniusEval::value)
      .def_readonly("w", &FrobeniusEval::w)
      .def_readonly("underdetermined", &FrobeniusEval::underdetermined);

  m.def("objective_frobenius", &objective_frobenius, py::arg("u"), py::arg("m"));
  m.def("objective_projection", &objective_projection, py::arg("u"), py::arg("m"));

  py::class_<CompletionConfig>(m, "CompletionConfig")
      .def(py::init<>())
      .def_property(
          "objective",
          [](const CompletionConfig& c) { return to_string(c.kind); },
          [](CompletionConfig& c, const std::string& name) {
            c.kind = completion_objective_from_string(name);
          })
      .def_readwrite("restarts", &CompletionConfig::restarts)
      .def_readwrite("optim", &CompletionConfig::optim);

  py::class_<CompletionResult>(m, "CompletionResult")
      .def_readonly("u", &CompletionResult::u)
      .def_readonly("w", &CompletionResult::w)
      .def_readonly("completed", &CompletionResult::completed)
      .def_readonly("residual", &CompletionResult::residual)
      .def_property_readonly(
          "status", [](const CompletionResult& r) { return to_string(r.status); })
      .def_readonly("trace", &CompletionResult::trace)
      .def_readonly("restart_values", &CompletionResult::restart_values)
      .def_readonly("best_restart", &CompletionResult::best_restart);

  m.def("complete_one", &complete_one, py::arg("m"), py::arg("rank"),
        py::arg("config") = CompletionConfig{}, py::arg("seed") = 0);
  m.def(
      "complete",
      [](const MaskedMatrix& masked, int rank, const CompletionConfig& config,
         uint64_t seed) {
        Rng rng(seed);
        return complete(masked, rank, config, rng);
      },
      py::arg("m"), py::arg("rank"), py::arg("config") = CompletionConfig{},
      py::arg("seed") = 0,
      "Multi-start low-rank completion keeping the best restart.");

  // --- domain adaptation ---
  py::class_<DomainPair>(m, "DomainPair")
      .def(py::init([](GrassmannPoint source, GrassmannPoint target,
                       Matrix source_features, std::vector<int> source_labels,
                       Matrix target_features, std::vector<int> target_labels) {
             return DomainPair{std::move(source),          std::move(target),
                               std::move(source_features), std::move(source_labels),
                               std::move(target_features), std::move(target_labels)};
           }),
           py::arg("source"), py::arg("target"), py::arg("source_features"),
           py::arg("source_labels"), py::arg("target_features"),
           py::arg("target_labels"))
      .def_readonly("source", &DomainPair::source)
      .def_readonly("target", &DomainPair::target)
      .def_readonly("source_features", &DomainPair::source_features)
      .def_readonly("source_labels", &DomainPair::source_labels)
      .def_readonly("target_features", &DomainPair::target_features)
      .def_readonly("target_labels", &DomainPair::target_labels);

  m.def("pca_subspace", &pca_subspace, py::arg("features"), py::arg("d"));
  m.def("sgf_sample", &sgf_sample, py::arg("source"), py::arg("target"),
        py::arg("ts"));
  m.def("gfk_matrix", &gfk_matrix, py::arg("source"), py::arg("target"),
        py::arg("nodes") = 20);

  py::class_<AdaptMethod>(m, "AdaptMethod")
      .def_static("none", &AdaptMethod::none)
      .def_static("sgf", &AdaptMethod::sgf, py::arg("t"))
      .def_static("gfk", &AdaptMethod::gfk, py::arg("nodes") = 20);

  py::class_<AdaptResult>(m, "AdaptResult")
      .def_readonly("predicted", &AdaptResult::predicted)
      .def_readonly("accuracy", &AdaptResult::accuracy);

  m.def("adapt_classify", &adapt_classify, py::arg("pair"), py::arg("method"),
        "1-nearest-neighbor transfer under the chosen representation.");

  // --- projector network ---
  py::class_<GrNetDims>(m, "GrNetDims")
      .def(py::init<>())
      .def_readwrite("n", &GrNetDims::n)
      .def_readwrite("k_in", &GrNetDims::k_in)
      .def_readwrite("m", &GrNetDims::m)
      .def_readwrite("d", &GrNetDims::d)
      .def_readwrite("classes", &GrNetDims::classes)
      .def_readwrite("filters", &GrNetDims::filters);

  py::class_<GrNetParams>(m, "GrNetParams")
      .def_readwrite("dims", &GrNetParams::dims)
      .def_readwrite("filters", &GrNetParams::filters)
      .def_readwrite("fc", &GrNetParams::fc)
      .def_readwrite("class_labels", &GrNetParams::class_labels);

  py::class_<GrNetActivation>(m, "GrNetActivation")
      .def_readonly("q", &GrNetActivation::q)
      .def_readonly("pooled", &GrNetActivation::pooled)
      .def_readonly("u", &GrNetActivation::u)
      .def_readonly("final_proj", &GrNetActivation::final_proj)
      .def_readonly("features", &GrNetActivation::features)
      .def_readonly("logits", &GrNetActivation::logits)
      .def_readonly("eigengap", &GrNetActivation::eigengap)
      .def_readonly("gap_warning", &GrNetActivation::gap_warning);

  py::class_<GrNetTrainConfig>(m, "GrNetTrainConfig")
      .def(py::init<>())
      .def_readwrite("epochs", &GrNetTrainConfig::epochs)
      .def_readwrite("step", &GrNetTrainConfig::step)
      .def_readwrite("fd_step", &GrNetTrainConfig::fd_step)
      .def_readwrite("min_step", &GrNetTrainConfig::min_step);

  py::class_<GrNetTrainResult>(m, "GrNetTrainResult")
      .def_readonly("params", &GrNetTrainResult::params)
      .def_readonly("loss_trace", &GrNetTrainResult::loss_trace)
      .def_readonly("best_loss", &GrNetTrainResult::best_loss);

  m.def(
      "grnet_init",
      [](const GrNetDims& dims, uint64_t seed) {
        Rng rng(seed);
        return grnet_init(dims, rng);
      },
      py::arg("dims"), py::arg("seed") = 0);
  m.def("grnet_forward", &grnet_forward, py::arg("params"), py::arg("x"));
  m.def("grnet_loss", &grnet_loss, py::arg("params"), py::arg("data"));
  m.def("grnet_fd_gradient", &grnet_fd_gradient, py::arg("params"),
        py::arg("data"), py::arg("fd_step") = 1e-5);
  m.def("grnet_train", &grnet_train, py::arg("initial"), py::arg("data"),
        py::arg("config") = GrNetTrainConfig{});
  m.def("grnet_predict", &grnet_predict, py::arg("params"), py::arg("points"));
  m.def("grnet_accuracy", &grnet_accuracy, py::arg("params"), py::arg("data"));

  // --- synthetic data ---
  py::class_<PointCloud>(m, "PointCloud")
      .def_readonly("points", &PointCloud::points)
      .def_readonly("labels", &PointCloud::labels);

  m.def(
      "three_rings",
      [](int n_total, std::array<double, 3> radii, double noise_sd,
         uint64_t seed) { return three_rings(n_total, radii, noise_sd, seed); },
      py::arg("n_total"), py::arg("radii") = std::array<double, 3>{1.0, 2.0, 3.0},
      py::arg("noise_sd") = 0.0, py::arg("seed") = 0);

  py::class_<CompletionInstance>(m, "CompletionInstance")
      .def_readonly("masked", &CompletionInstance::masked)
      .def_readonly("truth", &CompletionInstance::truth);

  m.def("low_rank_masked", &low_rank_masked, py::arg("n"), py::arg("k"),
        py::arg("r"), py::arg("obs_frac"), py::arg("seed") = 0);

  py::class_<SubspaceClasses>(m, "SubspaceClasses")
      .def_readonly("set", &SubspaceClasses::set)
      .def_readonly("prototypes", &SubspaceClasses::prototypes);

  m.def("labeled_subspaces", &labeled_subspaces, py::arg("classes"),
        py::arg("per_class"), py::arg("n"), py::arg("k"), py::arg("within_angle"),
        py::arg("seed") = 0);

  m.def("two_domain_shift", &two_domain_shift, py::arg("n_per_class"),
        py::arg("classes"), py::arg("dim"), py::arg("rotation_deg"),
        py::arg("seed") = 0);

  py::class_<ConstellationData>(m, "ConstellationData")
      .def_readonly("set", &ConstellationData::set)
      .def_readonly("codewords", &ConstellationData::codewords);

  m.def("constellation", &constellation, py::arg("n"), py::arg("k"),
        py::arg("codewords"), py::arg("per_codeword"), py::arg("noise_angle"),
        py::arg("seed") = 0);
}
