#pragma once

// Umbrella header.

#include "trel/ast.hpp"
#include "trel/classical.hpp"
#include "trel/error.hpp"
#include "trel/harness.hpp"
#include "trel/model.hpp"
#include "trel/mono.hpp"
#include "trel/poly.hpp"
#include "trel/prop.hpp"
#include "trel/verdict.hpp"
