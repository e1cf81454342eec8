// Heralded-source model: configuration weights, the averaged variance of a
// probabilistic source bank, and efficiency sweeps at a fixed phase setting.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <qufti/fisher.hpp>
#include <qufti/optimize.hpp>
#include <qufti/scattershot.hpp>

using namespace qufti;

TEST_CASE("herald weights", "[scattershot]") {
    REQUIRE(std::abs(herald_weight(3, 3, 0.9) - 0.729) < 1e-15);
    REQUIRE(herald_weight(2, 2, 1.0) == 1.0);
    REQUIRE(herald_weight(2, 0, 0.5) == 0.25);
}

TEST_CASE("herald configuration enumeration", "[scattershot]") {
    const auto perfect = herald_configs(2, 1.0);
    REQUIRE(perfect.size() == 4);
    REQUIRE(perfect[0].first == FockConfig{0, 0});
    REQUIRE(perfect[1].first == FockConfig{0, 1});
    REQUIRE(perfect[2].first == FockConfig{1, 0});
    REQUIRE(perfect[3].first == FockConfig{1, 1});
    REQUIRE(perfect[0].second == 0.0);
    REQUIRE(perfect[1].second == 0.0);
    REQUIRE(perfect[2].second == 0.0);
    REQUIRE(perfect[3].second == 1.0);

    for (const auto& [cfg, weight] : herald_configs(2, 0.5)) {
        REQUIRE(weight == 0.25);
    }

    const auto skewed = herald_configs(3, 0.9);
    REQUIRE(std::abs(skewed.back().second - 0.729) < 1e-15);

    double total = 0.0;
    for (const auto& [cfg, weight] : herald_configs(4, 0.37)) total += weight;
    REQUIRE(std::abs(total - 1.0) < 1e-12);

    REQUIRE_THROWS_AS(herald_configs(0, 0.5), InvalidDimensionError);
    REQUIRE_THROWS_AS(herald_configs(25, 0.5), SizeGuardError);
    REQUIRE_THROWS_AS(herald_configs(3, 1.5), ProbabilityError);
    REQUIRE_THROWS_AS(herald_configs(3, -0.1), ProbabilityError);
}

TEST_CASE("averaging is weight-independent for a constant information", "[scattershot]") {
    // If every heralded configuration carried the same information F0, the
    // averaged variance collapses to Tr[F0^-1] no matter how the source
    // weights are distributed.
    ScattershotSpec spec;
    spec.modes = 3;
    spec.num_phases = 2;
    spec.phases = {1.0, 2.5};
    const FisherSupplier constant = [](const FockConfig&) {
        return FisherMatrix(2, {2.0, 0.0, 0.0, 2.0});
    };
    for (double p : {0.2, 0.6, 0.9}) {
        spec.efficiency = p;
        const VarianceBound bound = scattershot_variance_with(spec, constant);
        REQUIRE_FALSE(bound.singular);
        REQUIRE(std::abs(bound.total_variance - 1.0) < 1e-12);
    }
}

TEST_CASE("perfect sources reproduce the deterministic device", "[scattershot]") {
    ScattershotSpec spec;
    spec.modes = 3;
    spec.num_phases = 2;
    spec.scheme = DetectionScheme::nrd();
    spec.efficiency = 1.0;
    spec.phases = {1.0, 2.5};

    const VarianceBound averaged = scattershot_variance(spec);
    const double deterministic =
        variance_objective(make_qufti(3, 2), uniform_input(3), spec.scheme, spec.phases);
    REQUIRE_FALSE(averaged.singular);
    REQUIRE(std::abs(averaged.total_variance - deterministic) < 1e-10);
}

TEST_CASE("dark sources carry no information", "[scattershot]") {
    ScattershotSpec spec;
    spec.modes = 3;
    spec.num_phases = 2;
    spec.scheme = DetectionScheme::nrd();
    spec.efficiency = 0.0;
    spec.phases = {1.0, 2.5};

    const VarianceBound bound = scattershot_variance(spec);
    REQUIRE(bound.singular);
    REQUIRE(std::isinf(bound.total_variance));
}

TEST_CASE("default supplier handles empty heralds", "[scattershot]") {
    ScattershotSpec spec;
    spec.modes = 3;
    spec.num_phases = 2;
    spec.scheme = DetectionScheme::nrd();
    spec.phases = {1.0, 2.5};

    const FisherSupplier supplier = make_classical_fisher_supplier(spec);
    const FisherMatrix vacuum = supplier(FockConfig{0, 0, 0});
    REQUIRE(vacuum.dim() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            REQUIRE(vacuum(i, j) == 0.0);
        }
    }
}

TEST_CASE("partial heralding sits between the limits", "[scattershot]") {
    // The four-mode, three-phase device at its best number-resolved setting:
    // imperfect sources cost sensitivity but do not destroy it.
    const Optimum opt = minimize_variance(4, 3, DetectionScheme::nrd());

    ScattershotSpec spec;
    spec.modes = 4;
    spec.num_phases = 3;
    spec.scheme = DetectionScheme::nrd();
    spec.phases = opt.phases;

    spec.efficiency = 0.8;
    const VarianceBound partial = scattershot_variance(spec);
    REQUIRE_FALSE(partial.singular);
    REQUIRE(partial.total_variance > opt.variance);
    REQUIRE(std::isfinite(partial.total_variance));

    spec.efficiency = 1.0;
    REQUIRE(std::abs(scattershot_variance(spec).total_variance - opt.variance) < 1e-10);
}

TEST_CASE("efficiency sweeps are monotone at fixed phases", "[scattershot]") {
    ScattershotSpec spec;
    spec.modes = 3;
    spec.num_phases = 2;
    spec.scheme = DetectionScheme::nrd();
    spec.phases = {1.0, 2.5};

    const std::vector<double> grid = {0.2, 0.4, 0.6, 0.8, 1.0};
    const std::vector<ScattershotPoint> points = scattershot_sweep(spec, grid);
    REQUIRE(points.size() == grid.size());
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (std::isinf(points[i - 1].bound.total_variance)) continue;
        REQUIRE(points[i].bound.total_variance <= points[i - 1].bound.total_variance + 1e-9);
    }

    // A single-point grid at p=1 reproduces the deterministic value.
    spec.efficiency = 1.0;
    const auto single = scattershot_sweep(spec, {1.0});
    REQUIRE(std::abs(single[0].bound.total_variance -
                     scattershot_variance(spec).total_variance) < 1e-12);

    REQUIRE_THROWS_AS(scattershot_sweep(spec, {0.5, 1.2}), ProbabilityError);
}

TEST_CASE("spec validation", "[scattershot]") {
    ScattershotSpec spec;
    spec.modes = 3;
    spec.num_phases = 3;
    spec.phases = {1.0, 2.0, 3.0};
    REQUIRE_THROWS_AS(scattershot_variance(spec), ReferenceModeError);

    spec.num_phases = 2;
    spec.phases = {1.0};
    REQUIRE_THROWS_AS(scattershot_variance(spec), ArityError);
}

TEST_CASE("per-configuration work is thread-invariant", "[scattershot]") {
    ScattershotSpec spec;
    spec.modes = 3;
    spec.num_phases = 2;
    spec.scheme = DetectionScheme::nrd();
    spec.efficiency = 0.7;
    spec.phases = {1.0, 2.5};

    const VarianceBound serial = scattershot_variance(spec, 1);
    const VarianceBound threaded = scattershot_variance(spec, 3);
    REQUIRE(serial.total_variance == threaded.total_variance);
}
