xs = [
    1,
    2,
]
