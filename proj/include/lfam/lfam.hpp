#pragma once

#include "lfam/correlation.hpp"
#include "lfam/family.hpp"
#include "lfam/finite_field.hpp"
#include "lfam/image.hpp"
#include "lfam/legendre.hpp"
#include "lfam/ndarray.hpp"
#include "lfam/verify.hpp"
#include "lfam/watermark.hpp"
