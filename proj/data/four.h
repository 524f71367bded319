1 2 -> A
2 3 -> B
3 1 -> C
