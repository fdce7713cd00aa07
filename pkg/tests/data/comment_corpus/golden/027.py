msg = (
    'part one '
    'part two'
)
