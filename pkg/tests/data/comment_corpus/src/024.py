class C:
    # attributes
    x = 1

    def m(self):
        return self.x  # getter
