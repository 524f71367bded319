1 2 -> C+
2 3 -> C+
3 1 -> C+
