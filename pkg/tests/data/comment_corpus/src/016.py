# only a comment