#pragma once

// Umbrella header.

#include "qu21/errors.hpp"
#include "qu21/generators.hpp"
#include "qu21/halfint.hpp"
#include "qu21/qarith.hpp"
#include "qu21/repspace.hpp"
#include "qu21/sparse.hpp"
#include "qu21/verify.hpp"
#include "qu21/weylracah.hpp"
