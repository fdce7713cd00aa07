def t():
	x = 1  # tab indent
	return x
