# Core map representation and surgery
