#pragma once

#include <hprod/digraph.hpp>
#include <hprod/error.hpp>
#include <hprod/io.hpp>
#include <hprod/labeling.hpp>
#include <hprod/permutation.hpp>
#include <hprod/product.hpp>
#include <hprod/rainbow.hpp>
#include <hprod/random.hpp>
#include <hprod/unicyclic.hpp>
