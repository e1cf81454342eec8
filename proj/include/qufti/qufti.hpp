// qufti/qufti.hpp
//
// Umbrella header: the exact simulator and Fisher-information toolkit for
// multiparameter phase estimation in multimode Fourier interferometers.

#pragma once

#include "qufti/complex_matrix.hpp"
#include "qufti/detection.hpp"
#include "qufti/error.hpp"
#include "qufti/figures.hpp"
#include "qufti/fisher.hpp"
#include "qufti/fock.hpp"
#include "qufti/fock_config.hpp"
#include "qufti/interferometer.hpp"
#include "qufti/optimize.hpp"
#include "qufti/parallel.hpp"
#include "qufti/permanent.hpp"
#include "qufti/report.hpp"
#include "qufti/scattershot.hpp"
#include "qufti/scenario.hpp"
