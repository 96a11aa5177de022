#pragma once

#include "greenseq/bigint.hpp"
#include "greenseq/dot.hpp"
#include "greenseq/errors.hpp"
#include "greenseq/framed.hpp"
#include "greenseq/layering.hpp"
#include "greenseq/matrix.hpp"
#include "greenseq/permpath.hpp"
#include "greenseq/quiver.hpp"
#include "greenseq/verify.hpp"
