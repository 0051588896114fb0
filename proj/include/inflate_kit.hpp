#pragma once

#include "inflate_kit/complex.hpp"
#include "inflate_kit/error.hpp"
#include "inflate_kit/homology.hpp"
#include "inflate_kit/inflation.hpp"
#include "inflate_kit/io.hpp"
#include "inflate_kit/poset.hpp"
#include "inflate_kit/sheaf.hpp"
#include "inflate_kit/simplicial.hpp"
#include "inflate_kit/smith.hpp"
#include "inflate_kit/verify.hpp"
