f = lambda s='#': s  # dash
