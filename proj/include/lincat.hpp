#pragma once

#include "lincat/scalar.hpp"
#include "lincat/matrix.hpp"
#include "lincat/smith.hpp"
#include "lincat/group.hpp"
#include "lincat/category.hpp"
#include "lincat/functor.hpp"
#include "lincat/presentation.hpp"
#include "lincat/covering.hpp"
#include "lincat/galois.hpp"
#include "lincat/grading.hpp"
#include "lincat/cohomology.hpp"
#include "lincat/pi1.hpp"
#include "lincat/io.hpp"
#include "lincat/fixtures.hpp"
