#pragma once

#include <adacut/config.hpp>
#include <adacut/cutoff.hpp>
#include <adacut/decompounding.hpp>
#include <adacut/deconvolution.hpp>
#include <adacut/distributions.hpp>
#include <adacut/errors.hpp>
#include <adacut/harness.hpp>
#include <adacut/rng.hpp>
#include <adacut/selectors.hpp>
#include <adacut/spectral.hpp>
#include <adacut/stats.hpp>
