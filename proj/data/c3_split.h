# reverses (3 + 3) / 2 = 3 arcs: C_3 (x) C_3 splits into 3 copies
1 2 -> C-
2 3 -> C-
3 1 -> C-
