1 2 -> F1
2 3 -> F2
3 4 -> F1^-
4 1 -> F3
