config = {
    'a': 1,  # alpha
    'b': 2,
}
